// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ta/enumerate.hpp"
#include "ta/institution.hpp"
#include "ta/model.hpp"
#include "ta/printer.hpp"

namespace ta {

/// Semantic model classes. FiniteSorts refines CtorBased, mirroring the
/// nesting of the corresponding signature categories.
enum class Flavor { Plain, CtorBased, FiniteSorts };

inline std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Plain: return "plain";
    case Flavor::CtorBased: return "ctor";
    default: return "fin";
  }
}

// ---------------------------------------------------------------------------
// Reachability
// ---------------------------------------------------------------------------

struct ReachabilityCertificate {
  bool reachable = false;
  // reachable: a witness ground term per element, keyed by (sort, index)
  std::map<std::pair<std::string, int>, Term> witnesses;
  // not reachable: one unreachable element
  std::string bad_sort;
  int bad_element = -1;
};

/// A model is reachable iff every element is the value of a ground term:
/// the least subset of the carriers containing all constants' values and
/// closed under the function tables must be everything.
inline ReachabilityCertificate is_reachable(const FiniteModel& m) {
  ReachabilityCertificate cert;
  std::map<std::pair<std::string, int>, Term> reached;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : m.sig->funcs) {
      auto table = m.tables.find(f);
      if (table == m.tables.end() || table->second.empty()) continue;
      // all argument tuples whose members are already reached
      std::vector<std::vector<int>> pools;
      bool ok = true;
      for (const auto& a : f.arity) {
        std::vector<int> pool;
        for (int i = 0; i < m.carrier_size(a); ++i)
          if (reached.count({a, i})) pool.push_back(i);
        if (pool.empty()) ok = false;
        pools.push_back(pool);
      }
      if (!ok) continue;
      std::vector<std::size_t> idx(pools.size(), 0);
      while (true) {
        std::vector<int> args;
        std::vector<Term> arg_terms;
        for (std::size_t i = 0; i < pools.size(); ++i) {
          int e = pools[i][idx[i]];
          args.push_back(e);
          arg_terms.push_back(reached.at({f.arity[i], e}));
        }
        int value = m.tables.at(f)[m.row_index(f, args)];
        if (!reached.count({f.result, value})) {
          reached[{f.result, value}] = tapp(f, arg_terms);
          changed = true;
        }
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < pools[k].size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
    }
  }
  for (const auto& s : m.sig->sorts)
    for (int i = 0; i < m.carrier_size(s); ++i)
      if (!reached.count({s, i})) {
        cert.reachable = false;
        cert.bad_sort = s;
        cert.bad_element = i;
        return cert;
      }
  cert.reachable = true;
  cert.witnesses = std::move(reached);
  return cert;
}

struct CtorCertificate {
  bool constructor_based = false;
  std::string bad_sort;  // when false: a constrained sort with an
  int bad_element = -1;  // element outside the constructor closure
};

/// Constructor-based: the least subset containing all loose-sort elements
/// (the valuation of the loose variable block) and closed under constructor
/// tables covers every constrained-sort carrier.
inline CtorCertificate is_constructor_based(const FiniteModel& m) {
  CtorCertificate cert;
  auto loose = m.sig->loose_sorts();
  std::set<std::pair<std::string, int>> have;
  for (const auto& s : loose)
    for (int i = 0; i < m.carrier_size(s); ++i) have.insert({s, i});
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : m.sig->ctor_funcs) {
      if (m.tables.find(f) == m.tables.end() || m.tables.at(f).empty()) continue;
      std::vector<std::vector<int>> pools;
      bool ok = true;
      for (const auto& a : f.arity) {
        std::vector<int> pool;
        for (int i = 0; i < m.carrier_size(a); ++i)
          if (have.count({a, i})) pool.push_back(i);
        if (pool.empty()) ok = false;
        pools.push_back(pool);
      }
      if (!ok) continue;
      std::vector<std::size_t> idx(pools.size(), 0);
      while (true) {
        std::vector<int> args;
        for (std::size_t i = 0; i < pools.size(); ++i) args.push_back(pools[i][idx[i]]);
        int value = m.tables.at(f)[m.row_index(f, args)];
        if (have.insert({f.result, value}).second) changed = true;
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < pools[k].size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
    }
  }
  for (const auto& s : m.sig->constrained_sorts())
    for (int i = 0; i < m.carrier_size(s); ++i)
      if (!have.count({s, i})) {
        cert.constructor_based = false;
        cert.bad_sort = s;
        cert.bad_element = i;
        return cert;
      }
  cert.constructor_based = true;
  return cert;
}

inline bool in_flavor(const FiniteModel& m, Flavor flavor) {
  switch (flavor) {
    case Flavor::Plain: return true;
    case Flavor::CtorBased: return is_constructor_based(m).constructor_based;
    case Flavor::FiniteSorts:
      // every finite model interprets every sort finitely; the class refines
      // the constructor-based one
      return is_constructor_based(m).constructor_based;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cardinality sentences
// ---------------------------------------------------------------------------

/// gamma_{s,n}: "sort s has at most n elements", i.e.
/// forall x1..x_{n+1} . or_{i<j} xi = xj; for n = 0 the empty disjunction.
inline Sentence gamma_sentence(const std::string& sort, int n) {
  VarBlock block;
  for (int i = 1; i <= n + 1; ++i) block.push_back(Variable{"x" + std::to_string(i), sort, 0});
  std::vector<Sentence> pairs;
  for (int i = 0; i < n + 1; ++i)
    for (int j = i + 1; j < n + 1; ++j) pairs.push_back(eq(tvar(block[i]), tvar(block[j])));
  return forall(std::move(block), sor(std::move(pairs)));
}

// ---------------------------------------------------------------------------
// Bounded semantic consequence
// ---------------------------------------------------------------------------

/// Outcome of a bounded search: a concrete counterexample, or exhaustion of
/// the bounded space. Never an unbounded validity claim; the logic is not
/// compact, so no finite search could certify one.
struct Verdict {
  bool holds_up_to_bound = false;
  std::optional<FiniteModel> counterexample;
  EnumBounds bounds;
};

/// Constructor-term shapes of the given sort up to `depth`: every loose
/// argument position holds a fresh variable, so each shape stands for all
/// its instances at once.
inline std::vector<Term> constructor_term_shapes(const Signature& sig, const std::string& sort,
                                                 int depth, int& var_counter, int qual) {
  std::vector<Term> out;
  if (depth <= 0) return out;
  auto constrained = sig.constrained_sorts();
  auto is_constrained = [&](const std::string& s) {
    return std::find(constrained.begin(), constrained.end(), s) != constrained.end();
  };
  for (const auto& f : sig.ctor_funcs) {
    if (f.result != sort) continue;
    std::vector<std::vector<Term>> pools;
    bool ok = true;
    for (const auto& a : f.arity) {
      if (is_constrained(a)) {
        pools.push_back(constructor_term_shapes(sig, a, depth - 1, var_counter, qual));
        if (pools.back().empty()) ok = false;
      } else {
        pools.push_back({});  // a fresh loose variable, minted per instance
      }
    }
    if (!ok) continue;
    std::vector<std::size_t> idx(pools.size(), 0);
    while (true) {
      std::vector<Term> args(pools.size(), tvar(Variable{}));
      for (std::size_t i = 0; i < pools.size(); ++i) {
        if (pools[i].empty())
          args[i] = tvar(Variable{"y" + std::to_string(++var_counter), f.arity[i], qual});
        else
          args[i] = pools[i][idx[i]];
      }
      out.push_back(tapp(f, std::move(args)));
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (pools[k].empty()) continue;  // single option
        if (++idx[k] < pools[k].size()) break;
        idx[k] = 0;
      }
      if (k == idx.size()) break;
    }
  }
  return out;
}

/// For each constrained sort, the sentence "every element is the value of a
/// constructor term over the loose carriers", with term depth adequate for
/// the given carrier bounds. Within those bounds it characterizes
/// constructor-based models exactly, and it lets the enumerator prune junk
/// elements instead of generating and filtering them.
inline std::vector<Sentence> generation_sentences(const Signature& sig, const EnumBounds& bounds) {
  int total = 1;
  for (const auto& s : sig.constrained_sorts()) {
    auto it = bounds.max_size.find(s);
    total += it == bounds.max_size.end() ? 0 : it->second;
  }
  std::vector<Sentence> out;
  int var_counter = 0;
  for (const auto& s : sig.constrained_sorts()) {
    Variable x{"x", s, next_qualifier()};
    std::vector<Sentence> disjuncts;
    for (const auto& t : constructor_term_shapes(sig, s, total, var_counter, next_qualifier())) {
      VarBlock vars = vars_of(t);
      Sentence match = eq(tvar(x), t);
      disjuncts.push_back(vars.empty() ? match : exists(vars, std::move(match)));
    }
    out.push_back(forall({x}, sor(std::move(disjuncts))));
  }
  return out;
}

inline Verdict semantic_entails(const SigPtr& sig, const std::vector<Sentence>& phi,
                                const Sentence& goal, Flavor flavor, const EnumBounds& bounds) {
  if (flavor != Flavor::Plain && sig->ctor_funcs.empty())
    throw MissingCtors("flavor '" + flavor_name(flavor) + "' needs declared constructors");
  if (flavor == Flavor::FiniteSorts && sig->finite_sorts.empty())
    throw MissingCtors("flavor 'fin' needs declared finite sorts");
  Verdict v;
  v.bounds = bounds;
  std::vector<Sentence> constraints = phi;
  constraints.push_back(snot(goal));
  if (flavor != Flavor::Plain)
    for (auto& g : generation_sentences(*sig, bounds)) constraints.push_back(std::move(g));
  enumerate_models(sig, bounds, constraints, [&](const FiniteModel& m) {
    if (!in_flavor(m, flavor)) return true;
    v.counterexample = m;
    return false;
  });
  v.holds_up_to_bound = !v.counterexample.has_value();
  return v;
}

// ---------------------------------------------------------------------------
// Constructor terms and the bounded (CB) / (FN) instance checkers
// ---------------------------------------------------------------------------

/// Constructor terms of the given sort up to `depth`, with loose-sort leaves
/// drawn from a finite prefix of fresh variables (prefix size = `loose_prefix`
/// per loose sort). Deterministic order: shallow terms first.
inline std::vector<Term> constructor_terms(const Signature& sig, const std::string& sort, int depth,
                                           int loose_prefix, int qual = 0) {
  Signature ctor_sig;
  ctor_sig.sorts = sig.sorts;
  ctor_sig.funcs = sig.ctor_funcs;
  std::vector<std::pair<std::string, std::string>> loose_consts;
  std::map<std::string, Variable> as_var;
  for (const auto& s : sig.loose_sorts())
    for (int i = 1; i <= loose_prefix; ++i) {
      std::string name = "y" + std::to_string(i) + "_" + s;
      loose_consts.push_back({name, s});
      as_var[name] = Variable{name, s, qual};
    }
  Signature ext = extend_with_constants(ctor_sig, loose_consts);
  auto ground = ground_terms_upto(ext, depth);
  // swap the loose placeholder constants back into variables
  std::function<Term(const Term&)> to_vars = [&](const Term& t) -> Term {
    const auto& app = t.app();
    if (app.args.empty() && as_var.count(app.fn.name)) return tvar(as_var.at(app.fn.name));
    std::vector<Term> args;
    for (const auto& a : app.args) args.push_back(to_vars(a));
    return tapp(app.fn, std::move(args));
  };
  std::vector<Term> out;
  for (const auto& t : ground[sort]) out.push_back(to_vars(t));
  return out;
}

struct InstancePremise {
  std::string description;  // the instantiating term or cardinality tuple
  Sentence sentence;
  bool holds_up_to_bound = false;
  std::optional<FiniteModel> counterexample;
};

struct InstanceReport {
  bool all_hold = true;
  bool bounded = true;  // premise families are truncated; always true here
  std::vector<InstancePremise> premises;
};

/// Bounded (CB) instance check: enumerates constructor terms t up to `depth`
/// and asks whether Phi entails forall var(t) . psi(t) for each, within
/// bounds. `hole` is the quantified variable of constrained sort in psi.
inline InstanceReport check_cb_instance(const SigPtr& sig, const std::vector<Sentence>& phi,
                                        const Variable& hole, const Sentence& psi, int depth,
                                        Flavor flavor, const EnumBounds& bounds,
                                        int loose_prefix = 2) {
  if (sig->ctor_funcs.empty()) throw MissingCtors("(CB) needs declared constructors");
  auto constrained = sig->constrained_sorts();
  if (std::find(constrained.begin(), constrained.end(), hole.sort) == constrained.end())
    throw SortError("(CB) hole variable must have a constrained sort, got '" + hole.sort + "'");
  InstanceReport report;
  for (const auto& t : constructor_terms(*sig, hole.sort, depth, loose_prefix, next_qualifier())) {
    InstancePremise premise;
    premise.description = print_term(t);
    Sentence instantiated = subst_vars(psi, {{hole, t}});
    VarBlock vars = vars_of(t);
    premise.sentence = vars.empty() ? instantiated : forall(vars, instantiated);
    Verdict v = semantic_entails(sig, phi, premise.sentence, flavor, bounds);
    premise.holds_up_to_bound = v.holds_up_to_bound;
    premise.counterexample = v.counterexample;
    if (!premise.holds_up_to_bound) report.all_hold = false;
    report.premises.push_back(std::move(premise));
  }
  return report;
}

/// Bounded (FN) instance check: enumerates cardinality tuples within `caps`
/// and asks whether Phi together with the gamma sentences entails psi.
inline InstanceReport check_fn_instance(const SigPtr& sig, const std::vector<Sentence>& phi,
                                        const Sentence& psi, const std::map<std::string, int>& caps,
                                        Flavor flavor, const EnumBounds& bounds) {
  if (sig->finite_sorts.empty()) throw MissingCtors("(FN) needs declared finite sorts");
  InstanceReport report;
  std::vector<std::string> finite = sig->finite_sorts;
  std::vector<int> tuple(finite.size(), 0);
  auto cap_of = [&](const std::string& s) {
    auto it = caps.find(s);
    return it == caps.end() ? 0 : it->second;
  };
  while (true) {
    InstancePremise premise;
    std::vector<Sentence> assumptions = phi;
    std::string desc;
    for (std::size_t i = 0; i < finite.size(); ++i) {
      if (i) desc += ",";
      desc += finite[i] + "<=" + std::to_string(tuple[i]);
      assumptions.push_back(gamma_sentence(finite[i], tuple[i]));
    }
    premise.description = desc;
    premise.sentence = psi;
    Verdict v = semantic_entails(sig, assumptions, psi, flavor, bounds);
    premise.holds_up_to_bound = v.holds_up_to_bound;
    premise.counterexample = v.counterexample;
    if (!premise.holds_up_to_bound) report.all_hold = false;
    report.premises.push_back(std::move(premise));

    std::size_t k = 0;
    for (; k < tuple.size(); ++k) {
      if (++tuple[k] <= cap_of(finite[k])) break;
      tuple[k] = 0;
    }
    if (k == tuple.size()) break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Derivations over the extended entailment rules
// ---------------------------------------------------------------------------

struct Judgment {
  SigPtr sig;
  std::vector<Sentence> lhs, rhs;  // lhs |- rhs

  friend bool operator==(const Judgment& a, const Judgment& b) {
    return *a.sig == *b.sig && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

inline bool sentence_subset(const std::vector<Sentence>& small, const std::vector<Sentence>& big) {
  for (const auto& s : small)
    if (std::find(big.begin(), big.end(), s) == big.end()) return false;
  return true;
}

struct DerivNode {
  enum Rule { Monotonicity, Transitivity, Union, Translation, CbBounded, FnBounded } rule;
  std::vector<int> premises;  // indices of earlier nodes
  Judgment conclusion;
  // Translation payload
  std::optional<SignatureMorphism> morphism;
  // CB payload: conclusion rhs must be the single sentence forall x . psi(x)
  int cb_depth = 0;
  // FN payload
  std::map<std::string, int> fn_caps;
  Flavor flavor = Flavor::Plain;
  EnumBounds bounds;
};

struct Derivation {
  std::vector<DerivNode> nodes;  // topological: premises come earlier
};

struct DerivationReport {
  ValidationReport violations;
  std::vector<int> bounded_nodes;  // nodes whose premises are truncated families
  std::vector<InstanceReport> instance_tables;
};

inline DerivationReport check_derivation(const Derivation& d) {
  DerivationReport out;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const DerivNode& node = d.nodes[i];
    std::string where = "node[" + std::to_string(i) + "]";
    for (int p : node.premises)
      if (p < 0 || p >= static_cast<int>(i)) {
        out.violations.add(where, "premise index out of range (must reference an earlier node)");
        goto next_node;
      }
    switch (node.rule) {
      case DerivNode::Monotonicity:
        if (!node.premises.empty()) out.violations.add(where, "(Monotonicity) takes no premises");
        if (!sentence_subset(node.conclusion.rhs, node.conclusion.lhs))
          out.violations.add(where, "(Monotonicity) needs Phi1 within Phi2");
        break;
      case DerivNode::Transitivity: {
        if (node.premises.size() != 2) {
          out.violations.add(where, "(Transitivity) takes exactly two premises");
          break;
        }
        const Judgment& a = d.nodes[node.premises[0]].conclusion;
        const Judgment& b = d.nodes[node.premises[1]].conclusion;
        if (!(a.rhs == b.lhs))
          out.violations.add(where, "(Transitivity) middle presentations differ");
        if (!(node.conclusion.lhs == a.lhs && node.conclusion.rhs == b.rhs))
          out.violations.add(where, "(Transitivity) conclusion does not chain the premises");
        break;
      }
      case DerivNode::Union: {
        // one premise Phi1 |- {phi} per sentence of the conclusion's rhs
        std::vector<Sentence> collected;
        bool ok = true;
        for (int p : node.premises) {
          const Judgment& j = d.nodes[p].conclusion;
          if (!(j.lhs == node.conclusion.lhs)) ok = false;
          if (j.rhs.size() != 1) ok = false;
          if (!j.rhs.empty()) collected.push_back(j.rhs[0]);
        }
        if (!ok || !(sentence_subset(node.conclusion.rhs, collected) &&
                     sentence_subset(collected, node.conclusion.rhs)))
          out.violations.add(where, "(Union) premises must be the singleton judgments of the conclusion");
        break;
      }
      case DerivNode::Translation: {
        if (node.premises.size() != 1 || !node.morphism) {
          out.violations.add(where, "(Translation) takes one premise and a morphism");
          break;
        }
        ValidationReport mr = check_morphism(*node.morphism);
        if (!mr.empty()) {
          out.violations.merge(mr, where + ".morphism");
          break;
        }
        const Judgment& j = d.nodes[node.premises[0]].conclusion;
        std::vector<Sentence> lhs, rhs;
        for (const auto& s : j.lhs) lhs.push_back(translate_sentence(*node.morphism, s));
        for (const auto& s : j.rhs) rhs.push_back(translate_sentence(*node.morphism, s));
        if (!(node.conclusion.lhs == lhs && node.conclusion.rhs == rhs))
          out.violations.add(where, "(Translation) conclusion is not the translated premise");
        break;
      }
      case DerivNode::CbBounded: {
        if (node.conclusion.rhs.size() != 1) {
          out.violations.add(where, "(CB) concludes a single universal sentence");
          break;
        }
        const Sentence& goal = node.conclusion.rhs[0];
        const auto* n = std::get_if<SenNot>(&goal.node);
        const SenExists* ex = n ? std::get_if<SenExists>(&n->body->node) : nullptr;
        const SenNot* inner = ex ? std::get_if<SenNot>(&ex->body->node) : nullptr;
        if (!inner || ex->block.size() != 1) {
          out.violations.add(where, "(CB) goal must be forall x . psi(x) with a single variable");
          break;
        }
        try {
          InstanceReport table =
              check_cb_instance(node.conclusion.sig, node.conclusion.lhs, ex->block[0],
                                *inner->body, node.cb_depth, node.flavor, node.bounds);
          out.bounded_nodes.push_back(static_cast<int>(i));
          if (!table.all_hold)
            out.violations.add(where, "(CB) a bounded premise instance failed");
          out.instance_tables.push_back(std::move(table));
        } catch (const Error& e) {
          out.violations.add(where, e.what());
        }
        break;
      }
      case DerivNode::FnBounded: {
        if (node.conclusion.rhs.size() != 1) {
          out.violations.add(where, "(FN) concludes a single sentence");
          break;
        }
        try {
          InstanceReport table = check_fn_instance(node.conclusion.sig, node.conclusion.lhs,
                                                   node.conclusion.rhs[0], node.fn_caps,
                                                   node.flavor, node.bounds);
          out.bounded_nodes.push_back(static_cast<int>(i));
          if (!table.all_hold)
            out.violations.add(where, "(FN) a bounded premise instance failed");
          out.instance_tables.push_back(std::move(table));
        } catch (const Error& e) {
          out.violations.add(where, e.what());
        }
        break;
      }
    }
  next_node:;
  }
  return out;
}

}  // namespace ta
