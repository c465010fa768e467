// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ta/classes.hpp"
#include "ta/enumerate.hpp"
#include "ta/model.hpp"

namespace ta {

/// A type in the model-theoretic sense: a set of sentences over the base
/// signature extended with a finite block of variables. The sentences are
/// open formulas with free variables from the block.
struct LogicType {
  SigPtr base;
  VarBlock block;
  std::vector<Sentence> sentences;
  int truncation_depth = 0;  // for generated types: where the family was cut

  friend bool operator==(const LogicType& a, const LogicType& b) {
    return *a.base == *b.base && a.block == b.block && a.sentences == b.sentences;
  }
};

inline ValidationReport check_type(const LogicType& t) {
  ValidationReport report;
  if (!valid_block(t.block)) report.add("block", "invalid variable block");
  for (const auto& v : t.block)
    if (!t.base->has_sort(v.sort)) report.add("block." + v.name, "undeclared sort '" + v.sort + "'");
  for (std::size_t i = 0; i < t.sentences.size(); ++i)
    report.merge(check_sentence(*t.base, t.sentences[i], t.block),
                 "sentence[" + std::to_string(i) + "]");
  return report;
}

/// Realization: a witness valuation of the block whose expansion satisfies
/// every sentence of the type; nullopt means the model omits the type. The
/// search over valuations is exhaustive, so the omission/realization
/// dichotomy is exact on finite models.
inline std::optional<Valuation> realizes(const FiniteModel& m, const LogicType& t) {
  for (const auto& v : t.block)
    if (m.carrier_size(v.sort) == 0) return std::nullopt;  // no expansion exists
  std::vector<int> idx(t.block.size(), 0);
  while (true) {
    Valuation val;
    for (std::size_t i = 0; i < t.block.size(); ++i) val[t.block[i]] = idx[i];
    bool all = true;
    for (const auto& s : t.sentences)
      if (!satisfies(m, s, val)) {
        all = false;
        break;
      }
    if (all) return val;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < m.carrier_size(t.block[k].sort)) break;
      idx[k] = 0;
    }
    if (k == idx.size()) return std::nullopt;
  }
}

/// The type T^c whose omission characterizes constructor-based models: one
/// variable per constrained sort, and for each constructor term t (up to
/// `depth`, loose leaves from a finite variable prefix) the sentence
/// forall var(t) . x != t.
inline LogicType build_Tc(const SigPtr& sig, int depth, int loose_prefix = 2) {
  if (sig->ctor_funcs.empty()) throw MissingCtors("T^c needs declared constructors");
  LogicType t;
  t.base = sig;
  t.truncation_depth = depth;
  std::map<std::string, Variable> var_for;
  for (const auto& s : sig->constrained_sorts()) {
    Variable x{"x_" + s, s, 0};
    var_for[s] = x;
    t.block.push_back(x);
  }
  for (const auto& s : sig->constrained_sorts())
    for (const auto& term : constructor_terms(*sig, s, depth, loose_prefix)) {
      Sentence body = neq(tvar(var_for[s]), term);
      VarBlock vars = vars_of(term);
      t.sentences.push_back(vars.empty() ? body : forall(vars, body));
    }
  return t;
}

/// The sentences and type of the "infinitely many elements" fixture, cut at
/// k sorts: Phi says each inhabited s_n forces at least n distinct elements
/// of s_1; T says some element of s_1 differs from any n chosen ones.
struct InfFixture {
  SigPtr sig;
  std::vector<Sentence> phi;
  LogicType type;
};

inline Sentence distinct_elements(const VarBlock& xs) {
  std::vector<Sentence> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) pairs.push_back(neq(tvar(xs[i]), tvar(xs[j])));
  return sand(std::move(pairs));
}

inline InfFixture build_inf_type(int k) {
  InfFixture out;
  Signature sig;
  for (int n = 1; n <= k; ++n) sig.sorts.push_back("s" + std::to_string(n));
  out.sig = make_sig(std::move(sig));

  for (int n = 1; n <= k; ++n) {
    Variable z{"z", "s" + std::to_string(n), 0};
    VarBlock xs;
    for (int i = 1; i <= n; ++i) xs.push_back(Variable{"x" + std::to_string(i), "s1", 0});
    Sentence some = exists({z}, truth());
    Sentence at_least_n = exists(xs, distinct_elements(xs));
    out.phi.push_back(implies(std::move(some), std::move(at_least_n)));
  }

  out.type.base = out.sig;
  Variable y{"y", "s1", 0};
  out.type.block.push_back(y);
  out.type.truncation_depth = k;
  for (int n = 1; n <= k; ++n) {
    VarBlock xs;
    for (int i = 1; i <= n; ++i) xs.push_back(Variable{"x" + std::to_string(i), "s1", 0});
    std::vector<Sentence> conj;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) conj.push_back(neq(tvar(xs[i]), tvar(xs[j])));
    for (const auto& x : xs) conj.push_back(neq(tvar(y), tvar(x)));
    out.type.sentences.push_back(exists(xs, sand(std::move(conj))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded isolation search
// ---------------------------------------------------------------------------

struct IsolationWitness {
  std::vector<std::pair<std::string, std::string>> d;  // fresh constants (name, sort)
  std::vector<Sentence> gamma;                         // over Sigma[D], from the pool
  std::map<Variable, Term> theta;                      // block -> D constants
  FiniteModel sat_witness;                             // model of theta(T) u Gamma
};

struct IsolationBounds {
  int max_d_per_sort = 1;
  int max_gamma = 1;
  EnumBounds model_bounds;
};

/// Bounded search for an isolation certificate: fresh constants D, a pool
/// subset Gamma with theta(T) u Gamma satisfiable over Sigma[D], and
/// Phi u Gamma entailing theta(T) within model bounds. A hit is a genuine
/// bounded-scale certificate; exhaustion is evidence of local omission, not
/// proof.
inline std::optional<IsolationWitness> search_isolation(const SigPtr& sig,
                                                        const std::vector<Sentence>& phi,
                                                        const LogicType& type,
                                                        const std::vector<Sentence>& pool,
                                                        const IsolationBounds& bounds) {
  // sorts that D must inhabit so a substitution theta : X -> D exists
  std::vector<std::string> block_sorts;
  for (const auto& v : type.block)
    if (std::find(block_sorts.begin(), block_sorts.end(), v.sort) == block_sorts.end())
      block_sorts.push_back(v.sort);

  // enumerate D sizes per block sort: 1..max (0 would leave theta undefined)
  std::vector<int> dsize(block_sorts.size(), type.block.empty() ? 0 : 1);
  while (true) {
    std::vector<std::pair<std::string, std::string>> d;
    for (std::size_t i = 0; i < block_sorts.size(); ++i)
      for (int k = 0; k < dsize[i]; ++k)
        d.push_back({"d" + std::to_string(k + 1) + "_" + block_sorts[i], block_sorts[i]});
    SigPtr ext = make_sig(extend_with_constants(*sig, d));

    // pool subsets, smaller first
    std::vector<std::vector<Sentence>> gammas;
    gammas.push_back({});
    for (int size = 1; size <= bounds.max_gamma && size <= static_cast<int>(pool.size()); ++size) {
      std::vector<int> pick(size);
      for (int i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        std::vector<Sentence> g;
        for (int i : pick) g.push_back(pool[i]);
        gammas.push_back(g);
        int k = size - 1;
        while (k >= 0 && pick[k] == static_cast<int>(pool.size()) - size + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int j = k + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }

    // substitutions theta : X -> D, odometer order
    std::vector<std::vector<int>> options;
    for (const auto& v : type.block) {
      std::vector<int> opts;
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i].second == v.sort) opts.push_back(static_cast<int>(i));
      options.push_back(opts);
    }
    std::vector<std::size_t> pick(type.block.size(), 0);
    while (true) {
      std::map<Variable, Term> theta;
      for (std::size_t i = 0; i < type.block.size(); ++i) {
        const auto& [name, sort] = d[options[i][pick[i]]];
        theta[type.block[i]] = tconst(name, sort);
      }
      std::vector<Sentence> theta_t;
      for (const auto& s : type.sentences) theta_t.push_back(subst_vars(s, theta));

      for (const auto& gamma : gammas) {
        // side condition: theta(T) u Gamma satisfiable over Sigma[D]
        std::vector<Sentence> sat_check = theta_t;
        for (const auto& g : gamma) sat_check.push_back(g);
        auto witness = find_model(ext, bounds.model_bounds, sat_check);
        if (!witness) continue;
        // Phi u Gamma |= theta(T): no bounded model of Phi u Gamma fails it
        std::vector<Sentence> assumptions = phi;
        for (const auto& g : gamma) assumptions.push_back(g);
        bool entailed = true;
        for (const auto& target : theta_t) {
          Verdict v = semantic_entails(ext, assumptions, target, Flavor::Plain, bounds.model_bounds);
          if (!v.holds_up_to_bound) {
            entailed = false;
            break;
          }
        }
        if (entailed) return IsolationWitness{d, gamma, theta, *witness};
      }

      std::size_t k = 0;
      for (; k < pick.size(); ++k) {
        if (++pick[k] < options[k].size()) break;
        pick[k] = 0;
      }
      if (k == pick.size() || type.block.empty()) break;
    }

    std::size_t k = 0;
    for (; k < dsize.size(); ++k) {
      if (++dsize[k] <= bounds.max_d_per_sort) break;
      dsize[k] = 1;
    }
    if (k == dsize.size() || block_sorts.empty()) break;
  }
  return std::nullopt;
}

}  // namespace ta
