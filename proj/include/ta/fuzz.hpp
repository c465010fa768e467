// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ta/classes.hpp"
#include "ta/forcing.hpp"
#include "ta/institution.hpp"
#include "ta/model.hpp"
#include "ta/printer.hpp"

namespace ta {

// ---------------------------------------------------------------------------
// Random structures. All generators draw from the deterministic Rng, so a
// seed pins the whole campaign.
// ---------------------------------------------------------------------------

namespace fuzz {

/// Sorts whose terms are generable from the context and the signature.
inline std::vector<std::string> generable_sorts(const Signature& sig, const VarBlock& ctx) {
  std::vector<std::string> out;
  bool changed = true;
  auto have = [&](const std::string& s) {
    return std::find(out.begin(), out.end(), s) != out.end();
  };
  for (const auto& v : ctx)
    if (!have(v.sort)) out.push_back(v.sort);
  while (changed) {
    changed = false;
    for (const auto& f : sig.funcs) {
      if (have(f.result)) continue;
      bool ok = true;
      for (const auto& a : f.arity)
        if (!have(a)) ok = false;
      if (ok) {
        out.push_back(f.result);
        changed = true;
      }
    }
  }
  return out;
}

inline std::optional<Term> random_term(const Signature& sig, Rng& rng, const std::string& sort,
                                       const VarBlock& ctx, int depth) {
  struct Option {
    bool is_var;
    Variable var;
    FuncDecl fn;
  };
  auto generable = generable_sorts(sig, ctx);
  auto ok_sort = [&](const std::string& s) {
    return std::find(generable.begin(), generable.end(), s) != generable.end();
  };
  std::vector<Option> options;
  for (const auto& v : ctx)
    if (v.sort == sort) options.push_back({true, v, {}});
  for (const auto& f : sig.funcs) {
    if (f.result != sort) continue;
    if (!f.arity.empty() && depth <= 1) continue;
    bool ok = true;
    for (const auto& a : f.arity)
      if (!ok_sort(a)) ok = false;
    if (ok) options.push_back({false, {}, f});
  }
  if (options.empty()) return std::nullopt;
  const Option& pick = options[static_cast<std::size_t>(rng.below(static_cast<int>(options.size())))];
  if (pick.is_var) return tvar(pick.var);
  std::vector<Term> args;
  for (const auto& a : pick.fn.arity) {
    auto sub = random_term(sig, rng, a, ctx, depth - 1);
    if (!sub) return std::nullopt;
    args.push_back(*sub);
  }
  return tapp(pick.fn, std::move(args));
}

inline Action random_action(const Signature& sig, Rng& rng, int depth) {
  const auto& labels = sig.labels;
  if (depth <= 1 || rng.chance(40))
    return alabel(labels[static_cast<std::size_t>(rng.below(static_cast<int>(labels.size())))]);
  switch (rng.below(3)) {
    case 0: return aseq(random_action(sig, rng, depth - 1), random_action(sig, rng, depth - 1));
    case 1: return aunion(random_action(sig, rng, depth - 1), random_action(sig, rng, depth - 1));
    default: return astar(random_action(sig, rng, depth - 1));
  }
}

inline Sentence random_sentence(const Signature& sig, Rng& rng, int depth, const VarBlock& ctx,
                                int& var_counter) {
  auto generable = generable_sorts(sig, ctx);
  auto atom = [&]() -> Sentence {
    if (!generable.empty() && rng.chance(85)) {
      const std::string& sort =
          generable[static_cast<std::size_t>(rng.below(static_cast<int>(generable.size())))];
      auto t1 = random_term(sig, rng, sort, ctx, 2 + rng.below(2));
      auto t2 = random_term(sig, rng, sort, ctx, 2 + rng.below(2));
      if (t1 && t2) {
        if (!sig.labels.empty() && rng.chance(40))
          return trans(random_action(sig, rng, 2), *t1, *t2);
        return eq(*t1, *t2);
      }
    }
    return rng.chance(50) ? truth() : falsity();
  };
  if (depth <= 1) return atom();
  switch (rng.below(6)) {
    case 0: return atom();
    case 1: return snot(random_sentence(sig, rng, depth - 1, ctx, var_counter));
    case 2: {
      std::vector<Sentence> items;
      int n = rng.below(3);
      for (int i = 0; i < n; ++i)
        items.push_back(random_sentence(sig, rng, depth - 1, ctx, var_counter));
      return sor(std::move(items));
    }
    case 3: {  // implication, normalizes into the core
      Sentence a = random_sentence(sig, rng, depth - 1, ctx, var_counter);
      Sentence b = random_sentence(sig, rng, depth - 1, ctx, var_counter);
      return implies(std::move(a), std::move(b));
    }
    default: {
      VarBlock block;
      int n = 1 + rng.below(2);
      for (int i = 0; i < n; ++i) {
        const std::string& sort =
            sig.sorts[static_cast<std::size_t>(rng.below(static_cast<int>(sig.sorts.size())))];
        block.push_back(Variable{"v" + std::to_string(var_counter++), sort, 0});
      }
      VarBlock inner = ctx;
      for (const auto& v : block) inner.push_back(v);
      Sentence body = random_sentence(sig, rng, depth - 1, inner, var_counter);
      if (rng.chance(50)) return exists(std::move(block), std::move(body));
      return forall(std::move(block), std::move(body));
    }
  }
}

/// A random model within the size cap. Carrier sizes that would deny a total
/// interpretation (nonempty domain, empty result) are bumped until feasible.
inline FiniteModel random_model(const SigPtr& sig, Rng& rng, int max_size, bool allow_empty) {
  FiniteModel m;
  m.sig = sig;
  std::map<std::string, int> size;
  for (const auto& s : sig->sorts) size[s] = allow_empty ? rng.below(max_size + 1) : 1 + rng.below(max_size);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : sig->funcs) {
      bool domain_nonempty = true;
      for (const auto& a : f.arity)
        if (size[a] == 0) domain_nonempty = false;
      if (domain_nonempty && size[f.result] == 0) {
        size[f.result] = 1 + rng.below(max_size);
        changed = true;
      }
    }
  }
  for (const auto& s : sig->sorts) {
    std::vector<std::string> elems;
    for (int i = 0; i < size[s]; ++i) elems.push_back(s + "_" + std::to_string(i));
    m.carriers[s] = std::move(elems);
  }
  for (const auto& f : sig->funcs) {
    std::size_t rows = m.table_rows(f);
    if (size[f.result] == 0) rows = 0;
    std::vector<int> table;
    for (std::size_t r = 0; r < rows; ++r) table.push_back(rng.below(size[f.result]));
    m.tables[f] = std::move(table);
  }
  for (const auto& l : sig->labels)
    for (const auto& s : sig->sorts) {
      std::set<std::pair<int, int>> pairs;
      for (int i = 0; i < size[s]; ++i)
        for (int j = 0; j < size[s]; ++j)
          if (rng.chance(25)) pairs.insert({i, j});
      if (!pairs.empty()) m.rels[{l, s}] = pairs;
    }
  return m;
}

}  // namespace fuzz

// ---------------------------------------------------------------------------
// Satisfaction-condition campaign (morphisms)
// ---------------------------------------------------------------------------

struct SatCondCase {
  SignatureMorphism chi;
  FiniteModel target_model;
  Sentence source_sentence;
};

inline SatCondCase random_satcond_case(Rng& rng) {
  using namespace fuzz;
  Signature target;
  int nu = 1 + rng.below(3);
  for (int i = 0; i < nu; ++i) target.sorts.push_back("u" + std::to_string(i));
  int nl = 1 + rng.below(2);
  for (int i = 0; i < nl; ++i) target.labels.push_back("m" + std::to_string(i));

  Signature source;
  int ns = 1 + rng.below(3);
  std::map<std::string, std::string> sort_map;
  for (int i = 0; i < ns; ++i) {
    std::string s = "s" + std::to_string(i);
    source.sorts.push_back(s);
    sort_map[s] = target.sorts[static_cast<std::size_t>(rng.below(nu))];
  }
  std::map<std::string, std::string> label_map;
  int sl = rng.below(3);
  for (int i = 0; i < sl; ++i) {
    std::string l = "la" + std::to_string(i);
    source.labels.push_back(l);
    label_map[l] = target.labels[static_cast<std::size_t>(rng.below(nl))];
  }
  std::map<FuncDecl, FuncDecl> func_map;
  int nf = 1 + rng.below(4);
  for (int i = 0; i < nf; ++i) {
    FuncDecl f;
    f.name = "f" + std::to_string(i);
    int arity = rng.below(3);
    for (int a = 0; a < arity; ++a)
      f.arity.push_back(source.sorts[static_cast<std::size_t>(rng.below(ns))]);
    f.result = source.sorts[static_cast<std::size_t>(rng.below(ns))];
    source.funcs.push_back(f);
    FuncDecl g;
    g.arity.clear();
    for (const auto& a : f.arity) g.arity.push_back(sort_map[a]);
    g.result = sort_map[f.result];
    // reuse a compatible target symbol half the time, otherwise mint one
    const FuncDecl* reuse = nullptr;
    if (rng.chance(50))
      for (const auto& cand : target.funcs)
        if (cand.arity == g.arity && cand.result == g.result) reuse = &cand;
    if (reuse) {
      func_map[f] = *reuse;
    } else {
      g.name = "g" + std::to_string(i);
      target.funcs.push_back(g);
      func_map[f] = g;
    }
  }
  // a few target-only symbols so the reduct genuinely forgets structure
  if (rng.chance(60)) {
    FuncDecl extra{"extra", {}, target.sorts[static_cast<std::size_t>(rng.below(nu))]};
    target.funcs.push_back(extra);
  }

  SatCondCase out;
  out.chi.source = make_sig(std::move(source));
  out.chi.target = make_sig(std::move(target));
  out.chi.sort_map = std::move(sort_map);
  out.chi.func_map = std::move(func_map);
  out.chi.label_map = std::move(label_map);
  out.target_model = fuzz::random_model(out.chi.target, rng, 3, true);
  int var_counter = 0;
  out.source_sentence = fuzz::random_sentence(*out.chi.source, rng, 1 + rng.below(4), {}, var_counter);
  return out;
}

struct CampaignResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

inline CampaignResult run_satcond_campaign(int cases, std::uint64_t seed) {
  Rng rng(seed);
  CampaignResult result;
  for (int i = 0; i < cases; ++i) {
    SatCondCase c = random_satcond_case(rng);
    FiniteModel reduct = reduct_model(c.chi, c.target_model);
    bool lhs = satisfies(reduct, c.source_sentence);
    bool rhs = satisfies(c.target_model, translate_sentence(c.chi, c.source_sentence));
    ++result.cases;
    if (lhs != rhs) {
      ++result.failures;
      if (result.first_failure.empty())
        result.first_failure =
            "case " + std::to_string(i) + ": " + print_sentence(c.source_sentence);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Satisfaction-condition campaign (substitutions)
// ---------------------------------------------------------------------------

struct SubstCase {
  Substitution theta;
  FiniteModel model;  // over Sigma[C2]
  Sentence sentence;  // over Sigma[C1]
};

inline SubstCase random_subst_case(Rng& rng) {
  using namespace fuzz;
  Signature base;
  int ns = 1 + rng.below(2);
  for (int i = 0; i < ns; ++i) base.sorts.push_back("s" + std::to_string(i));
  int nc = 1 + rng.below(2);
  for (int i = 0; i < nc; ++i)
    base.funcs.push_back(
        FuncDecl{"k" + std::to_string(i), {}, base.sorts[static_cast<std::size_t>(rng.below(ns))]});
  if (rng.chance(50)) {
    FuncDecl f{"f", {base.sorts[0]}, base.sorts[static_cast<std::size_t>(rng.below(ns))]};
    base.funcs.push_back(f);
  }
  if (rng.chance(50)) base.labels.push_back("l");

  SubstCase out;
  out.theta.base = make_sig(base);
  int n1 = rng.below(3);
  for (int i = 0; i < n1; ++i)
    out.theta.c1.push_back(
        {"a" + std::to_string(i), base.sorts[static_cast<std::size_t>(rng.below(ns))]});
  int n2 = rng.below(3);
  for (int i = 0; i < n2; ++i)
    out.theta.c2.push_back(
        {"b" + std::to_string(i), base.sorts[static_cast<std::size_t>(rng.below(ns))]});
  // every C1 sort must admit a ground image term over Sigma[C2]
  for (const auto& [name, sort] : out.theta.c1) {
    Signature ext = extend_with_constants(base, out.theta.c2);
    auto generable = fuzz::generable_sorts(ext, {});
    if (std::find(generable.begin(), generable.end(), sort) == generable.end())
      out.theta.c2.push_back({"b" + std::to_string(static_cast<int>(out.theta.c2.size())), sort});
  }
  Signature target = out.theta.target_sig();
  auto ground = ground_terms_upto(target, 4);
  for (const auto& [name, sort] : out.theta.c1) {
    const auto& pool = ground.at(sort);  // nonempty: generability ensured above
    out.theta.map[name] = pool[static_cast<std::size_t>(rng.below(static_cast<int>(pool.size())))];
  }
  out.model = fuzz::random_model(make_sig(target), rng, 3, true);
  Signature source = out.theta.source_sig();
  int var_counter = 0;
  out.sentence = fuzz::random_sentence(source, rng, 1 + rng.below(4), {}, var_counter);
  return out;
}

inline CampaignResult run_subst_campaign(int cases, std::uint64_t seed) {
  Rng rng(seed);
  CampaignResult result;
  for (int i = 0; i < cases; ++i) {
    SubstCase c = random_subst_case(rng);
    FiniteModel reduct = reduct_along_substitution(c.theta, c.model);
    bool lhs = satisfies(reduct, c.sentence);
    bool rhs = satisfies(c.model, apply_substitution(c.theta, c.sentence));
    ++result.cases;
    if (lhs != rhs) {
      ++result.failures;
      if (result.first_failure.empty())
        result.first_failure = "case " + std::to_string(i) + ": " + print_sentence(c.sentence);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Random valid forcing properties with decision pools
// ---------------------------------------------------------------------------

struct RandomForcing {
  ForcingProperty property;
  std::vector<Sentence> pool;  // atoms of the base signature first, then composites
};

/// Small random forcing property: constants-only signatures (possibly growing
/// by one constant along the order), atom sets closed under exact atomic
/// consequence so axiom 4 holds by construction.
inline RandomForcing random_forcing_property(Rng& rng) {
  bool with_labels = rng.chance(60);
  Signature base;
  base.sorts = {"s"};
  int ncons = 2;
  if (!with_labels && rng.chance(50)) ncons = 3;
  for (int i = 0; i < ncons; ++i) base.funcs.push_back(FuncDecl{"c" + std::to_string(i), {}, "s"});
  if (with_labels) {
    base.labels.push_back("l");
    if (rng.chance(40)) base.labels.push_back("mu");
  }
  bool growing = !with_labels && ncons == 2 && rng.chance(50);

  int n = 2 + rng.below(5);
  RandomForcing out;
  ForcingProperty& prop = out.property;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.push_back({rng.below(i), i});
  for (int extra = rng.below(3); extra > 0; --extra) {
    int a = rng.below(n), b = rng.below(n);
    if (a < b) edges.push_back({a, b});
  }
  prop.conds.resize(static_cast<std::size_t>(n));
  close_order(prop, edges);

  // signatures: monotone constant additions
  std::vector<bool> adds(static_cast<std::size_t>(n), false);
  if (growing)
    for (int i = 1; i < n; ++i) adds[static_cast<std::size_t>(i)] = rng.chance(30);
  SigPtr base_sig = make_sig(base);
  std::vector<SigPtr> sigs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j)
      if (prop.leq(j, i) && adds[static_cast<std::size_t>(j)]) any = true;
    if (any) {
      Signature s = base;
      s.funcs.push_back(FuncDecl{"h", {}, "s"});
      sigs[static_cast<std::size_t>(i)] = make_sig(std::move(s));
    } else {
      sigs[static_cast<std::size_t>(i)] = base_sig;
    }
  }

  // atom sets: random growth, closed under exact consequence, monotone
  for (int i = 0; i < n; ++i) {
    auto& cond = prop.conds[static_cast<std::size_t>(i)];
    cond.name = "p" + std::to_string(i);
    cond.sig = sigs[static_cast<std::size_t>(i)];
    std::vector<Sentence> universe = atomic_universe(*cond.sig, 1);
    std::vector<Sentence> atoms;
    for (int j = 0; j < n; ++j)
      if (prop.leq(j, i) && j != i)
        for (const auto& a : prop.conds[static_cast<std::size_t>(j)].atoms)
          if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
    int fresh = rng.below(3);
    for (int f = 0; f < fresh; ++f) {
      const Sentence& pick =
          universe[static_cast<std::size_t>(rng.below(static_cast<int>(universe.size())))];
      if (std::find(atoms.begin(), atoms.end(), pick) == atoms.end()) atoms.push_back(pick);
    }
    // close under exact atomic consequence within the universe
    std::vector<Sentence> closed;
    for (const auto& phi : universe)
      if (entails_atomic(atoms, phi)) closed.push_back(phi);
    cond.atoms = std::move(closed);
  }
  // conditions were filled in index order; re-assert monotonicity after
  // closure by a second union pass (closure is monotone, so one pass holds)

  // the decision pool: all base atoms, then composites over them
  out.pool = atomic_universe(*base_sig, 1);
  Term c0 = tapp(base.funcs[0]), c1 = tapp(base.funcs[1]);
  if (with_labels) {
    out.pool.push_back(trans(astar(alabel("l")), c0, c1));
    out.pool.push_back(trans(aseq(alabel("l"), alabel("l")), c0, c1));
    if (base.labels.size() > 1)
      out.pool.push_back(trans(aunion(alabel("l"), alabel("mu")), c0, c0));
  }
  out.pool.push_back(snot(eq(c0, c1)));
  if (with_labels) out.pool.push_back(snot(trans(alabel("l"), c0, c1)));
  Variable v{"v", "s", 0};
  if (with_labels) out.pool.push_back(exists({v}, trans(alabel("l"), tvar(v), c1)));
  else out.pool.push_back(exists({v}, eq(tvar(v), c1)));
  std::vector<Sentence> disj;
  disj.push_back(eq(c0, c1));
  if (with_labels) disj.push_back(trans(alabel("l"), c0, c1));
  out.pool.push_back(sor(std::move(disj)));
  out.pool.push_back(snot(snot(eq(c0, c1))));
  return out;
}

}  // namespace ta
