// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ta/base.hpp"
#include "ta/signature.hpp"

namespace ta {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

/// A variable is identified by name, sort, and an opaque qualifier tag that
/// stands in for the ambient signature. Fresh-variable generation bumps the
/// tag so generated variables never collide with user-written ones.
struct Variable {
  std::string name;
  std::string sort;
  int qualifier = 0;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

inline int next_qualifier() {
  static int counter = 0;
  return ++counter;
}

using VarBlock = std::vector<Variable>;

/// The block condition: no two variables with the same name and distinct sorts.
inline bool valid_block(const VarBlock& block) {
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      if (block[i].name == block[j].name && block[i].sort != block[j].sort) return false;
      if (block[i] == block[j]) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Term;

struct TermApp {
  FuncDecl fn;  // resolved rank
  std::vector<Term> args;
  friend bool operator==(const TermApp&, const TermApp&);
};

struct Term {
  std::variant<Variable, TermApp> node;

  bool is_var() const { return std::holds_alternative<Variable>(node); }
  const Variable& var() const { return std::get<Variable>(node); }
  const TermApp& app() const { return std::get<TermApp>(node); }

  /// Sort by construction; terms are built resolved.
  const std::string& sort() const {
    return is_var() ? var().sort : app().fn.result;
  }

  friend bool operator==(const Term&, const Term&) = default;
};

inline bool operator==(const TermApp& a, const TermApp& b) {
  return a.fn == b.fn && a.args == b.args;
}

inline Term tvar(Variable v) { return Term{std::move(v)}; }
inline Term tapp(FuncDecl fn, std::vector<Term> args = {}) {
  return Term{TermApp{std::move(fn), std::move(args)}};
}
inline Term tconst(const std::string& name, const std::string& sort) {
  return tapp(FuncDecl{name, {}, sort});
}

inline bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const auto& a : t.app().args)
    if (!is_ground(a)) return false;
  return true;
}

inline int term_depth(const Term& t) {
  if (t.is_var()) return 1;
  int d = 0;
  for (const auto& a : t.app().args) d = std::max(d, term_depth(a));
  return d + 1;
}

inline void collect_vars(const Term& t, VarBlock& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var()) == out.end()) out.push_back(t.var());
    return;
  }
  for (const auto& a : t.app().args) collect_vars(a, out);
}

inline VarBlock vars_of(const Term& t) {
  VarBlock out;
  collect_vars(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

struct Action;

struct ActLabel {
  std::string label;
  friend bool operator==(const ActLabel&, const ActLabel&) = default;
};
struct ActSeq {
  Box<Action> lhs, rhs;
  friend bool operator==(const ActSeq&, const ActSeq&) = default;
};
struct ActUnion {
  Box<Action> lhs, rhs;
  friend bool operator==(const ActUnion&, const ActUnion&) = default;
};
struct ActStar {
  Box<Action> body;
  friend bool operator==(const ActStar&, const ActStar&) = default;
};

struct Action {
  std::variant<ActLabel, ActSeq, ActUnion, ActStar> node;
  friend bool operator==(const Action&, const Action&) = default;
};

inline Action alabel(std::string l) { return Action{ActLabel{std::move(l)}}; }
inline Action aseq(Action a, Action b) { return Action{ActSeq{Box<Action>(std::move(a)), Box<Action>(std::move(b))}}; }
inline Action aunion(Action a, Action b) { return Action{ActUnion{Box<Action>(std::move(a)), Box<Action>(std::move(b))}}; }
inline Action astar(Action a) { return Action{ActStar{Box<Action>(std::move(a))}}; }

inline void collect_labels(const Action& a, std::vector<std::string>& out) {
  if (const auto* l = std::get_if<ActLabel>(&a.node)) {
    out.push_back(l->label);
  } else if (const auto* s = std::get_if<ActSeq>(&a.node)) {
    collect_labels(*s->lhs, out);
    collect_labels(*s->rhs, out);
  } else if (const auto* u = std::get_if<ActUnion>(&a.node)) {
    collect_labels(*u->lhs, out);
    collect_labels(*u->rhs, out);
  } else {
    collect_labels(*std::get<ActStar>(a.node).body, out);
  }
}

// ---------------------------------------------------------------------------
// Sentences. Core constructors only; everything else is sugar.
// ---------------------------------------------------------------------------

struct Sentence;

struct SenEq {
  Term lhs, rhs;
  friend bool operator==(const SenEq&, const SenEq&) = default;
};
struct SenTrans {
  Action act;
  Term lhs, rhs;
  friend bool operator==(const SenTrans&, const SenTrans&) = default;
};
struct SenNot {
  Box<Sentence> body;
  friend bool operator==(const SenNot&, const SenNot&) = default;
};
struct SenOr {
  std::vector<Sentence> items;
  friend bool operator==(const SenOr&, const SenOr&) = default;
};
struct SenExists {
  VarBlock block;
  Box<Sentence> body;
  friend bool operator==(const SenExists&, const SenExists&) = default;
};

struct Sentence {
  std::variant<SenEq, SenTrans, SenNot, SenOr, SenExists> node;
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

inline Sentence eq(Term a, Term b) { return Sentence{SenEq{std::move(a), std::move(b)}}; }
inline Sentence trans(Action act, Term a, Term b) {
  return Sentence{SenTrans{std::move(act), std::move(a), std::move(b)}};
}
inline Sentence snot(Sentence s) { return Sentence{SenNot{Box<Sentence>(std::move(s))}}; }
inline Sentence sor(std::vector<Sentence> items) { return Sentence{SenOr{std::move(items)}}; }
inline Sentence exists(VarBlock block, Sentence body) {
  return Sentence{SenExists{std::move(block), Box<Sentence>(std::move(body))}};
}

// Sugar in terms of the five core constructors.
inline Sentence falsity() { return sor({}); }
inline Sentence truth() { return snot(falsity()); }
inline Sentence sand(std::vector<Sentence> items) {
  std::vector<Sentence> negated;
  negated.reserve(items.size());
  for (auto& s : items) negated.push_back(snot(std::move(s)));
  return snot(sor(std::move(negated)));
}
inline Sentence implies(Sentence a, Sentence b) {
  std::vector<Sentence> items;
  items.push_back(snot(std::move(a)));
  items.push_back(std::move(b));
  return sor(std::move(items));
}
inline Sentence forall(VarBlock block, Sentence body) {
  return snot(exists(std::move(block), snot(std::move(body))));
}
inline Sentence neq(Term a, Term b) { return snot(eq(std::move(a), std::move(b))); }

/// The core AST never holds sugar, so normalization is a structural rebuild;
/// provided so the fixpoint law normalize(normalize(x)) = normalize(x) is a
/// stated, testable part of the contract.
inline Sentence normalize(const Sentence& s);

inline Sentence normalize(const Sentence& s) {
  if (const auto* e = std::get_if<SenEq>(&s.node)) return eq(e->lhs, e->rhs);
  if (const auto* t = std::get_if<SenTrans>(&s.node)) return trans(t->act, t->lhs, t->rhs);
  if (const auto* n = std::get_if<SenNot>(&s.node)) return snot(normalize(*n->body));
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    std::vector<Sentence> items;
    items.reserve(o->items.size());
    for (const auto& i : o->items) items.push_back(normalize(i));
    return sor(std::move(items));
  }
  const auto& ex = std::get<SenExists>(s.node);
  return exists(ex.block, normalize(*ex.body));
}

// ---------------------------------------------------------------------------
// Well-formedness
// ---------------------------------------------------------------------------

/// Sort of a term under a variable context. Throws on ill-formed input.
inline std::string sort_of_term(const Signature& sig, const VarBlock& ctx, const Term& t) {
  if (t.is_var()) {
    const auto& v = t.var();
    for (const auto& c : ctx)
      if (c == v) return c.sort;
    throw UnboundVariable("variable '" + v.name + ":" + v.sort + "' not bound in context");
  }
  const auto& app = t.app();
  if (!sig.has_func(app.fn))
    throw SortError("function symbol not declared: " + app.fn.rank_str());
  if (app.args.size() != app.fn.arity.size())
    throw SortError("arity mismatch for " + app.fn.rank_str());
  for (std::size_t i = 0; i < app.args.size(); ++i) {
    std::string got = sort_of_term(sig, ctx, app.args[i]);
    if (got != app.fn.arity[i])
      throw SortError("argument " + std::to_string(i + 1) + " of " + app.fn.name + " has sort " +
                      got + ", expected " + app.fn.arity[i]);
  }
  return app.fn.result;
}

namespace detail {

inline void check_term(const Signature& sig, const VarBlock& ctx, const Term& t,
                       const std::string& where, ValidationReport& report) {
  try {
    sort_of_term(sig, ctx, t);
  } catch (const Error& e) {
    report.add(where, e.what());
  }
}

inline void check_action(const Signature& sig, const Action& a, const std::string& where,
                         ValidationReport& report) {
  std::vector<std::string> labels;
  collect_labels(a, labels);
  for (const auto& l : labels)
    if (!sig.has_label(l)) report.add(where, "undeclared label '" + l + "'");
}

inline void check_sentence_rec(const Signature& sig, const VarBlock& ctx, const Sentence& s,
                               const std::string& where, ValidationReport& report) {
  if (const auto* e = std::get_if<SenEq>(&s.node)) {
    check_term(sig, ctx, e->lhs, where + ".lhs", report);
    check_term(sig, ctx, e->rhs, where + ".rhs", report);
    try {
      auto ls = sort_of_term(sig, ctx, e->lhs);
      auto rs = sort_of_term(sig, ctx, e->rhs);
      if (ls != rs) report.add(where, "equation operands have sorts " + ls + " and " + rs);
    } catch (const Error&) {
      // already reported above
    }
    return;
  }
  if (const auto* t = std::get_if<SenTrans>(&s.node)) {
    check_action(sig, t->act, where + ".action", report);
    check_term(sig, ctx, t->lhs, where + ".lhs", report);
    check_term(sig, ctx, t->rhs, where + ".rhs", report);
    try {
      auto ls = sort_of_term(sig, ctx, t->lhs);
      auto rs = sort_of_term(sig, ctx, t->rhs);
      if (ls != rs) report.add(where, "transition endpoints have sorts " + ls + " and " + rs);
    } catch (const Error&) {
    }
    return;
  }
  if (const auto* n = std::get_if<SenNot>(&s.node)) {
    check_sentence_rec(sig, ctx, *n->body, where + ".not", report);
    return;
  }
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    for (std::size_t i = 0; i < o->items.size(); ++i)
      check_sentence_rec(sig, ctx, o->items[i], where + ".or[" + std::to_string(i) + "]", report);
    return;
  }
  const auto& ex = std::get<SenExists>(s.node);
  if (!valid_block(ex.block)) report.add(where, "variable block has a duplicate name with distinct sorts");
  for (const auto& v : ex.block)
    if (!sig.has_sort(v.sort))
      report.add(where, "quantified variable '" + v.name + "' has undeclared sort '" + v.sort + "'");
  VarBlock inner = ctx;
  for (const auto& v : ex.block) {
    // Inner binding of the same name shadows the outer one.
    std::erase_if(inner, [&](const Variable& o) { return o.name == v.name; });
    inner.push_back(v);
  }
  check_sentence_rec(sig, inner, *ex.body, where + ".exists", report);
}

}  // namespace detail

inline ValidationReport check_sentence(const Signature& sig, const Sentence& s,
                                       const VarBlock& ctx = {}) {
  ValidationReport report;
  detail::check_sentence_rec(sig, ctx, s, "sentence", report);
  return report;
}

inline bool well_formed(const Signature& sig, const Sentence& s, const VarBlock& ctx = {}) {
  return check_sentence(sig, s, ctx).empty();
}

// ---------------------------------------------------------------------------
// Syntactic substitution of variables by terms (capture-free because fresh
// variables carry bumped qualifiers, and the replaced occurrences are free).
// ---------------------------------------------------------------------------

inline Term subst_vars(const Term& t, const std::map<Variable, Term>& repl) {
  if (t.is_var()) {
    auto it = repl.find(t.var());
    return it == repl.end() ? t : it->second;
  }
  TermApp out = t.app();
  for (auto& a : out.args) a = subst_vars(a, repl);
  return Term{std::move(out)};
}

inline Sentence subst_vars(const Sentence& s, const std::map<Variable, Term>& repl) {
  if (const auto* e = std::get_if<SenEq>(&s.node))
    return eq(subst_vars(e->lhs, repl), subst_vars(e->rhs, repl));
  if (const auto* t = std::get_if<SenTrans>(&s.node))
    return trans(t->act, subst_vars(t->lhs, repl), subst_vars(t->rhs, repl));
  if (const auto* n = std::get_if<SenNot>(&s.node)) return snot(subst_vars(*n->body, repl));
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    std::vector<Sentence> items;
    items.reserve(o->items.size());
    for (const auto& i : o->items) items.push_back(subst_vars(i, repl));
    return sor(std::move(items));
  }
  const auto& ex = std::get<SenExists>(s.node);
  std::map<Variable, Term> inner = repl;
  for (const auto& v : ex.block) inner.erase(v);
  return exists(ex.block, subst_vars(*ex.body, inner));
}

/// Replaces every occurrence of the constant `c` by `by`. Used for the
/// substitution functor, where constants (not variables) are mapped to terms.
inline Term subst_const(const Term& t, const FuncDecl& c, const Term& by) {
  if (t.is_var()) return t;
  const auto& app = t.app();
  if (app.fn == c && app.args.empty()) return by;
  TermApp out = app;
  for (auto& a : out.args) a = subst_const(a, c, by);
  return Term{std::move(out)};
}

inline Sentence subst_const(const Sentence& s, const FuncDecl& c, const Term& by) {
  if (const auto* e = std::get_if<SenEq>(&s.node))
    return eq(subst_const(e->lhs, c, by), subst_const(e->rhs, c, by));
  if (const auto* t = std::get_if<SenTrans>(&s.node))
    return trans(t->act, subst_const(t->lhs, c, by), subst_const(t->rhs, c, by));
  if (const auto* n = std::get_if<SenNot>(&s.node)) return snot(subst_const(*n->body, c, by));
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    std::vector<Sentence> items;
    items.reserve(o->items.size());
    for (const auto& i : o->items) items.push_back(subst_const(i, c, by));
    return sor(std::move(items));
  }
  const auto& ex = std::get<SenExists>(s.node);
  return exists(ex.block, subst_const(*ex.body, c, by));
}

// ---------------------------------------------------------------------------
// Ground term enumeration (bounded by depth), in a fixed canonical order:
// depth-1 terms first, then depth 2, ...; within a depth, functions in
// signature order and argument tuples in odometer order.
// ---------------------------------------------------------------------------

inline std::map<std::string, std::vector<Term>> ground_terms_upto(const Signature& sig, int max_depth) {
  std::map<std::string, std::vector<Term>> by_sort;
  for (const auto& s : sig.sorts) by_sort[s] = {};
  std::map<std::string, std::vector<Term>> prev_layers = by_sort;
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::map<std::string, std::vector<Term>> layer;
    for (const auto& s : sig.sorts) layer[s] = {};
    for (const auto& f : sig.funcs) {
      if (f.is_constant()) {
        if (depth == 1) layer[f.result].push_back(tapp(f));
        continue;
      }
      if (depth == 1) continue;
      // all argument tuples from terms of depth < current, at least one of
      // depth exactly current-1 so each term is produced once
      std::vector<std::vector<Term>> pools;
      bool ok = true;
      for (const auto& a : f.arity) {
        if (prev_layers[a].empty()) {
          ok = false;
          break;
        }
        pools.push_back(prev_layers[a]);
      }
      if (!ok) continue;
      std::vector<std::size_t> idx(pools.size(), 0);
      while (true) {
        std::vector<Term> args;
        int deepest = 0;
        for (std::size_t i = 0; i < pools.size(); ++i) {
          args.push_back(pools[i][idx[i]]);
          deepest = std::max(deepest, term_depth(pools[i][idx[i]]));
        }
        if (deepest == depth - 1) layer[f.result].push_back(tapp(f, args));
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < pools[k].size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
    }
    for (const auto& s : sig.sorts) {
      auto& dst = by_sort[s];
      dst.insert(dst.end(), layer[s].begin(), layer[s].end());
      auto& pl = prev_layers[s];
      pl.insert(pl.end(), layer[s].begin(), layer[s].end());
    }
  }
  return by_sort;
}

/// True when the depth-bounded ground-term universe is a strict truncation,
/// i.e. terms of depth max_depth+1 exist.
inline bool ground_universe_truncated(const Signature& sig, int max_depth) {
  auto upto = ground_terms_upto(sig, max_depth + 1);
  auto bounded = ground_terms_upto(sig, max_depth);
  for (const auto& s : sig.sorts)
    if (upto[s].size() != bounded[s].size()) return true;
  return false;
}

}  // namespace ta
