// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ta/model.hpp"

namespace ta {

struct EnumBounds {
  std::map<std::string, int> max_size;  // per-sort carrier cap; absent means 0
  long long node_budget = 200'000'000;
  bool iso_prune = false;

  int cap(const std::string& sort) const {
    auto it = max_size.find(sort);
    return it == max_size.end() ? 0 : it->second;
  }
};

namespace detail {

enum class Tri : char { False, True, Unknown };

inline Tri tri_not(Tri t) {
  if (t == Tri::Unknown) return Tri::Unknown;
  return t == Tri::True ? Tri::False : Tri::True;
}

/// Lower/upper relation bounds for a partially assigned model. Every action
/// combinator is monotone, so the interval stays sound under composition,
/// union and star.
struct RelIv {
  Rel low, high;
};

struct PartialModel {
  FiniteModel m;  // table cells hold -1 while unassigned
  std::map<std::pair<std::string, std::string>, std::vector<signed char>> relbits;  // 0/1/2=unset

  signed char rel_at(const std::string& label, const std::string& sort, int i, int j) const {
    const auto& bits = relbits.at({label, sort});
    int n = m.carrier_size(sort);
    return bits[static_cast<std::size_t>(i) * n + j];
  }
};

inline std::optional<int> eval_term_partial(const PartialModel& pm, const Valuation& v,
                                            const Term& t) {
  if (t.is_var()) {
    auto it = v.find(t.var());
    if (it == v.end()) throw UnboundVariable("unbound variable in constraint");
    return it->second;
  }
  const auto& app = t.app();
  std::vector<int> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) {
    auto val = eval_term_partial(pm, v, a);
    if (!val) return std::nullopt;
    args.push_back(*val);
  }
  int cell = pm.m.tables.at(app.fn)[pm.m.row_index(app.fn, args)];
  if (cell < 0) return std::nullopt;
  return cell;
}

inline RelIv eval_action_iv(const PartialModel& pm, const Action& a, const std::string& sort) {
  if (const auto* l = std::get_if<ActLabel>(&a.node)) {
    int n = pm.m.carrier_size(sort);
    RelIv iv{Rel(n), Rel(n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        signed char b = pm.rel_at(l->label, sort, i, j);
        if (b == 1) iv.low.set(i, j);
        if (b != 0) iv.high.set(i, j);
      }
    return iv;
  }
  if (const auto* s = std::get_if<ActSeq>(&a.node)) {
    RelIv x = eval_action_iv(pm, *s->lhs, sort), y = eval_action_iv(pm, *s->rhs, sort);
    return {x.low.compose(y.low), x.high.compose(y.high)};
  }
  if (const auto* u = std::get_if<ActUnion>(&a.node)) {
    RelIv x = eval_action_iv(pm, *u->lhs, sort), y = eval_action_iv(pm, *u->rhs, sort);
    return {x.low.unite(y.low), x.high.unite(y.high)};
  }
  RelIv x = eval_action_iv(pm, *std::get<ActStar>(a.node).body, sort);
  return {x.low.star(), x.high.star()};
}

inline Tri sat_partial(const PartialModel& pm, const Sentence& s, const Valuation& v) {
  if (const auto* e = std::get_if<SenEq>(&s.node)) {
    auto a = eval_term_partial(pm, v, e->lhs);
    auto b = eval_term_partial(pm, v, e->rhs);
    if (!a || !b) return Tri::Unknown;
    return *a == *b ? Tri::True : Tri::False;
  }
  if (const auto* t = std::get_if<SenTrans>(&s.node)) {
    auto a = eval_term_partial(pm, v, t->lhs);
    auto b = eval_term_partial(pm, v, t->rhs);
    if (!a || !b) return Tri::Unknown;
    RelIv iv = eval_action_iv(pm, t->act, t->lhs.sort());
    if (iv.low.at(*a, *b)) return Tri::True;
    if (!iv.high.at(*a, *b)) return Tri::False;
    return Tri::Unknown;
  }
  if (const auto* n = std::get_if<SenNot>(&s.node)) return tri_not(sat_partial(pm, *n->body, v));
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    bool unknown = false;
    for (const auto& item : o->items) {
      Tri r = sat_partial(pm, item, v);
      if (r == Tri::True) return Tri::True;
      if (r == Tri::Unknown) unknown = true;
    }
    return unknown ? Tri::Unknown : Tri::False;
  }
  const auto& ex = std::get<SenExists>(s.node);
  for (const auto& var : ex.block)
    if (pm.m.carrier_size(var.sort) == 0) return Tri::False;
  std::vector<int> idx(ex.block.size(), 0);
  bool unknown = false;
  while (true) {
    Valuation inner = v;
    for (std::size_t i = 0; i < ex.block.size(); ++i) inner[ex.block[i]] = idx[i];
    Tri r = sat_partial(pm, *ex.body, inner);
    if (r == Tri::True) return Tri::True;
    if (r == Tri::Unknown) unknown = true;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < pm.m.carrier_size(ex.block[k].sort)) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return unknown ? Tri::Unknown : Tri::False;
}

struct Cell {
  enum Kind { Table, RelBit } kind;
  FuncDecl fn;          // Table
  std::size_t row = 0;  // Table
  std::string label, sort;
  int i = 0, j = 0;  // RelBit
};

inline std::string canonical_key(const FiniteModel& m) {
  // lexicographically minimal serialization over per-sort carrier relabelings
  std::vector<std::string> sorts = m.sig->sorts;
  std::vector<std::vector<std::vector<int>>> perms_per_sort;
  for (const auto& s : sorts) {
    int n = m.carrier_size(s);
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> all;
    do {
      all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    perms_per_sort.push_back(all);
  }
  std::string best;
  std::vector<std::size_t> choice(sorts.size(), 0);
  while (true) {
    std::map<std::string, const std::vector<int>*> perm;
    std::map<std::string, std::vector<int>> inv;
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      const auto& p = perms_per_sort[i][choice[i]];
      perm[sorts[i]] = &p;
      std::vector<int> q(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) q[p[k]] = static_cast<int>(k);
      inv[sorts[i]] = std::move(q);
    }
    std::ostringstream os;
    for (const auto& s : sorts) os << m.carrier_size(s) << ',';
    for (const auto& f : m.sig->funcs) {
      const auto& table = m.tables.at(f);
      os << '|';
      std::size_t rows = table.size();
      for (std::size_t r = 0; r < rows; ++r) {
        // relabeled_table(args) = perm(table(perm^-1(args))), row r unranked
        // in the relabeled numbering
        std::vector<int> args(f.arity.size());
        std::size_t rest = r;
        for (std::size_t k = 0; k < f.arity.size(); ++k) {
          int n = m.carrier_size(f.arity[k]);
          args[k] = static_cast<int>(rest % n);
          rest /= n;
        }
        std::vector<int> pargs(args.size());
        for (std::size_t k = 0; k < args.size(); ++k)
          pargs[k] = inv.at(f.arity[k])[args[k]];
        os << ' ' << (*perm.at(f.result))[table[m.row_index(f, pargs)]];
      }
    }
    for (const auto& l : m.sig->labels)
      for (const auto& s : m.sig->sorts) {
        os << '|';
        int n = m.carrier_size(s);
        const auto& p = *perm.at(s);
        auto it = m.rels.find({l, s});
        std::set<std::pair<int, int>> mapped;
        if (it != m.rels.end())
          for (auto [a, b] : it->second) mapped.insert({p[a], p[b]});
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) os << (mapped.count({i, j}) ? '1' : '0');
      }
    std::string key = os.str();
    if (best.empty() || key < best) best = key;
    std::size_t k = 0;
    for (; k < choice.size(); ++k) {
      if (++choice[k] < perms_per_sort[k].size()) break;
      choice[k] = 0;
    }
    if (k == choice.size()) break;
  }
  return best;
}

}  // namespace detail

/// Exhaustively enumerates the finite models of `constraints` with carriers
/// within `bounds`, in a fixed canonical order: carrier sizes in product
/// order (first sort fastest), then function-table cells row-major, then
/// relation bits. Invokes `yield` for each model found; a false return stops
/// the search. Returns true when the space was exhausted.
inline bool enumerate_models(const SigPtr& sig, const EnumBounds& bounds,
                             const std::vector<Sentence>& constraints,
                             const std::function<bool(const FiniteModel&)>& yield) {
  using namespace detail;
  long long budget = bounds.node_budget;
  std::set<std::string> seen_keys;

  std::vector<int> sizes(sig->sorts.size(), 0);
  while (true) {
    // skip size combinations that admit no total interpretation
    bool feasible = true;
    auto size_of = [&](const std::string& s) {
      for (std::size_t i = 0; i < sig->sorts.size(); ++i)
        if (sig->sorts[i] == s) return sizes[i];
      return 0;
    };
    for (const auto& f : sig->funcs) {
      bool domain_nonempty = true;
      for (const auto& a : f.arity)
        if (size_of(a) == 0) domain_nonempty = false;
      if (domain_nonempty && size_of(f.result) == 0) {
        feasible = false;
        break;
      }
    }

    if (feasible) {
      PartialModel pm;
      FiniteModel& m = pm.m;
      m.sig = sig;
      for (std::size_t i = 0; i < sig->sorts.size(); ++i) {
        std::vector<std::string> elems;
        for (int k = 0; k < sizes[i]; ++k)
          elems.push_back(sig->sorts[i] + "_" + std::to_string(k));
        m.carriers[sig->sorts[i]] = std::move(elems);
      }
      std::vector<Cell> cells;
      for (const auto& f : sig->funcs) {
        std::size_t rows = m.table_rows(f);
        m.tables[f].assign(rows, -1);
        if (m.carrier_size(f.result) == 0) m.tables[f].clear();
        for (std::size_t r = 0; r < m.tables[f].size(); ++r)
          cells.push_back(Cell{Cell::Table, f, r, "", "", 0, 0});
      }
      for (const auto& l : sig->labels)
        for (const auto& s : sig->sorts) {
          int n = size_of(s);
          pm.relbits[{l, s}].assign(static_cast<std::size_t>(n) * n, 2);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cells.push_back(Cell{Cell::RelBit, {}, 0, l, s, i, j});
        }

      bool stopped = false;
      auto consistent = [&]() {
        for (const auto& c : constraints)
          if (sat_partial(pm, c, {}) == Tri::False) return false;
        return true;
      };
      std::function<bool(std::size_t)> dfs = [&](std::size_t at) -> bool {
        if (--budget < 0) throw ResourceLimit("model enumeration budget exceeded");
        if (at == cells.size()) {
          for (const auto& c : constraints)
            if (sat_partial(pm, c, {}) != Tri::True) return true;
          FiniteModel found = m;
          for (const auto& [key, bits] : pm.relbits) {
            int n = m.carrier_size(key.second);
            std::set<std::pair<int, int>> pairs;
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j)
                if (bits[static_cast<std::size_t>(i) * n + j] == 1) pairs.insert({i, j});
            if (!pairs.empty()) found.rels[key] = std::move(pairs);
          }
          if (bounds.iso_prune && !seen_keys.insert(canonical_key(found)).second) return true;
          return yield(found);
        }
        const Cell& cell = cells[at];
        if (cell.kind == Cell::Table) {
          int options = m.carrier_size(cell.fn.result);
          for (int v = 0; v < options; ++v) {
            m.tables[cell.fn][cell.row] = v;
            if (consistent() && !dfs(at + 1)) return false;
          }
          m.tables[cell.fn][cell.row] = -1;
        } else {
          auto& bits = pm.relbits[{cell.label, cell.sort}];
          std::size_t pos = static_cast<std::size_t>(cell.i) * m.carrier_size(cell.sort) + cell.j;
          for (signed char v = 0; v <= 1; ++v) {
            bits[pos] = v;
            if (consistent() && !dfs(at + 1)) return false;
          }
          bits[pos] = 2;
        }
        return true;
      };
      if (consistent()) stopped = !dfs(0);
      if (stopped) return false;
    }

    std::size_t k = 0;
    for (; k < sizes.size(); ++k) {
      if (++sizes[k] <= bounds.cap(sig->sorts[k])) break;
      sizes[k] = 0;
    }
    if (k == sizes.size()) return true;
  }
}

/// First model of `constraints` within bounds, if any.
inline std::optional<FiniteModel> find_model(const SigPtr& sig, const EnumBounds& bounds,
                                             const std::vector<Sentence>& constraints) {
  std::optional<FiniteModel> out;
  enumerate_models(sig, bounds, constraints, [&](const FiniteModel& m) {
    out = m;
    return false;
  });
  return out;
}

}  // namespace ta
