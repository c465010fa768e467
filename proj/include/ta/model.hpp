// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ta/ast.hpp"
#include "ta/signature.hpp"

namespace ta {

/// Binary relation over a finite carrier, as a square boolean matrix.
struct Rel {
  int n = 0;
  std::vector<char> bits;  // row-major, n*n

  Rel() = default;
  explicit Rel(int size) : n(size), bits(static_cast<std::size_t>(size) * size, 0) {}

  bool at(int i, int j) const { return bits[static_cast<std::size_t>(i) * n + j] != 0; }
  void set(int i, int j, bool v = true) { bits[static_cast<std::size_t>(i) * n + j] = v ? 1 : 0; }

  static Rel identity(int size) {
    Rel r(size);
    for (int i = 0; i < size; ++i) r.set(i, i);
    return r;
  }

  Rel compose(const Rel& other) const {
    Rel out(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (at(i, k))
          for (int j = 0; j < n; ++j)
            if (other.at(k, j)) out.set(i, j);
    return out;
  }

  Rel unite(const Rel& other) const {
    Rel out(n);
    for (std::size_t i = 0; i < bits.size(); ++i) out.bits[i] = bits[i] | other.bits[i];
    return out;
  }

  bool subset_of(const Rel& other) const {
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i] && !other.bits[i]) return false;
    return true;
  }

  /// Least reflexive-transitive closure: fixpoint of R -> Id u R u R;R.
  Rel star() const {
    Rel cur = unite(identity(n));
    while (true) {
      Rel next = cur.unite(cur.compose(cur));
      if (next.bits == cur.bits) return cur;
      cur = next;
    }
  }

  friend bool operator==(const Rel&, const Rel&) = default;
};

/// Finite transition algebra: per-sort carriers (possibly empty), total
/// function tables, and per-label per-sort transition relations.
struct FiniteModel {
  SigPtr sig;
  std::map<std::string, std::vector<std::string>> carriers;  // sort -> element names
  // Function tables are row-major over argument tuples (odometer order, first
  // argument fastest); values are element indices in the result carrier.
  std::map<FuncDecl, std::vector<int>> tables;
  std::map<std::pair<std::string, std::string>, std::set<std::pair<int, int>>> rels;  // (label, sort)

  int carrier_size(const std::string& sort) const {
    auto it = carriers.find(sort);
    return it == carriers.end() ? 0 : static_cast<int>(it->second.size());
  }

  const std::string& element_name(const std::string& sort, int idx) const {
    return carriers.at(sort)[static_cast<std::size_t>(idx)];
  }

  std::size_t table_rows(const FuncDecl& f) const {
    std::size_t rows = 1;
    for (const auto& a : f.arity) rows *= static_cast<std::size_t>(carrier_size(a));
    return rows;
  }

  std::size_t row_index(const FuncDecl& f, const std::vector<int>& args) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
      idx += stride * static_cast<std::size_t>(args[i]);
      stride *= static_cast<std::size_t>(carrier_size(f.arity[i]));
    }
    return idx;
  }

  Rel label_rel(const std::string& label, const std::string& sort) const {
    Rel r(carrier_size(sort));
    auto it = rels.find({label, sort});
    if (it != rels.end())
      for (const auto& [a, b] : it->second) r.set(a, b);
    return r;
  }

  friend bool operator==(const FiniteModel& a, const FiniteModel& b) {
    return *a.sig == *b.sig && a.carriers == b.carriers && a.tables == b.tables && a.rels == b.rels;
  }
};

inline ValidationReport validate_model(const FiniteModel& m) {
  ValidationReport report;
  for (const auto& s : m.sig->sorts) {
    if (!m.carriers.count(s)) report.add("carrier." + s, "carrier missing");
  }
  for (const auto& [s, elems] : m.carriers) {
    if (!m.sig->has_sort(s)) report.add("carrier." + s, "carrier for undeclared sort");
    std::set<std::string> seen;
    for (const auto& e : elems)
      if (!seen.insert(e).second) report.add("carrier." + s, "duplicate element '" + e + "'");
  }
  for (const auto& f : m.sig->funcs) {
    auto it = m.tables.find(f);
    std::size_t rows = m.table_rows(f);
    if (it == m.tables.end()) {
      if (rows > 0) report.add("table." + f.name, "table missing for " + f.rank_str());
      continue;
    }
    if (it->second.size() != rows)
      report.add("table." + f.name, "table for " + f.rank_str() + " has " +
                                        std::to_string(it->second.size()) + " rows, expected " +
                                        std::to_string(rows));
    int result_size = m.carrier_size(f.result);
    for (int v : it->second)
      if (v < 0 || v >= result_size) {
        report.add("table." + f.name, "table value out of carrier range for " + f.rank_str());
        break;
      }
    // a total function into an empty carrier exists only when the domain is empty
    if (rows > 0 && result_size == 0)
      report.add("table." + f.name,
                 "totality: " + f.rank_str() + " has a nonempty domain but empty result carrier");
  }
  for (const auto& [key, pairs] : m.rels) {
    const auto& [label, sort] = key;
    if (!m.sig->has_label(label)) report.add("rel." + label, "relation for undeclared label");
    if (!m.sig->has_sort(sort)) report.add("rel." + label, "relation on undeclared sort '" + sort + "'");
    int n = m.carrier_size(sort);
    for (const auto& [a, b] : pairs)
      if (a < 0 || a >= n || b < 0 || b >= n) {
        report.add("rel." + label + "." + sort, "relation endpoint outside carrier");
        break;
      }
  }
  return report;
}

/// Sort-correct assignment of elements to a variable block.
using Valuation = std::map<Variable, int>;

inline int eval_term(const FiniteModel& m, const Valuation& v, const Term& t) {
  if (t.is_var()) {
    auto it = v.find(t.var());
    if (it == v.end())
      throw UnboundVariable("variable '" + t.var().name + "' has no value in the valuation");
    return it->second;
  }
  const auto& app = t.app();
  auto table = m.tables.find(app.fn);
  if (table == m.tables.end()) throw SortError("no table for " + app.fn.rank_str());
  std::vector<int> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(eval_term(m, v, a));
  return table->second[m.row_index(app.fn, args)];
}

inline Rel eval_action(const FiniteModel& m, const Action& a, const std::string& sort) {
  if (const auto* l = std::get_if<ActLabel>(&a.node)) return m.label_rel(l->label, sort);
  if (const auto* s = std::get_if<ActSeq>(&a.node))
    return eval_action(m, *s->lhs, sort).compose(eval_action(m, *s->rhs, sort));
  if (const auto* u = std::get_if<ActUnion>(&a.node))
    return eval_action(m, *u->lhs, sort).unite(eval_action(m, *u->rhs, sort));
  return eval_action(m, *std::get<ActStar>(a.node).body, sort).star();
}

/// The satisfaction relation. Quantifiers enumerate valuations
/// lexicographically over the ordered carriers; a block containing a sort
/// with empty carrier has no valuations, so Exists yields false there.
inline bool satisfies(const FiniteModel& m, const Sentence& s, const Valuation& v = {}) {
  if (const auto* e = std::get_if<SenEq>(&s.node))
    return eval_term(m, v, e->lhs) == eval_term(m, v, e->rhs);
  if (const auto* t = std::get_if<SenTrans>(&s.node)) {
    const std::string& sort = t->lhs.sort();
    Rel r = eval_action(m, t->act, sort);
    return r.at(eval_term(m, v, t->lhs), eval_term(m, v, t->rhs));
  }
  if (const auto* n = std::get_if<SenNot>(&s.node)) return !satisfies(m, *n->body, v);
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    for (const auto& item : o->items)
      if (satisfies(m, item, v)) return true;
    return false;
  }
  const auto& ex = std::get<SenExists>(s.node);
  for (const auto& var : ex.block)
    if (m.carrier_size(var.sort) == 0) return false;
  std::vector<int> idx(ex.block.size(), 0);
  while (true) {
    Valuation inner = v;
    for (std::size_t i = 0; i < ex.block.size(); ++i) inner[ex.block[i]] = idx[i];
    if (satisfies(m, *ex.body, inner)) return true;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < m.carrier_size(ex.block[k].sort)) break;
      idx[k] = 0;
    }
    if (k == idx.size()) return false;
  }
}

inline bool satisfies_all(const FiniteModel& m, const std::vector<Sentence>& phis) {
  for (const auto& phi : phis)
    if (!satisfies(m, phi)) return false;
  return true;
}

}  // namespace ta
