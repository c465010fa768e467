// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ta/surface.hpp"
#include "ta/types.hpp"

namespace ta {

struct FixtureParams {
  int k = 4;      // truncation size for families indexed by naturals
  int depth = 3;  // constructor-term depth for generated types
};

inline std::vector<std::string> fixture_names() {
  return {"uls", "example28", "list", "list-saturated", "list-ctor3",
          "inf", "list-tc", "tf", "forcing-chain"};
}

namespace detail {

inline SigPtr list_signature() {
  Signature sig;
  sig.sorts = {"Elt", "List"};
  sig.funcs = {FuncDecl{"empty", {}, "List"}, FuncDecl{"cons", {"List", "Elt"}, "List"},
               FuncDecl{"add", {"List", "List"}, "List"}};
  sig.ctor_funcs = {sig.funcs[0], sig.funcs[1]};
  return make_sig(std::move(sig));
}

inline PresDecl list_axioms(const SigPtr& sig) {
  Variable x{"x", "List", 0}, y{"y", "List", 0}, z{"z", "List", 0}, e{"e", "Elt", 0};
  FuncDecl empty = sig->funcs[0], cons = sig->funcs[1], add = sig->funcs[2];
  Sentence unit = forall({x}, eq(tapp(add, {tvar(x), tapp(empty)}), tvar(x)));
  Sentence step = forall({x, y, e}, eq(tapp(add, {tvar(x), tapp(cons, {tvar(y), tvar(e)})}),
                                       tapp(cons, {tapp(add, {tvar(x), tvar(y)}), tvar(e)})));
  return PresDecl{"PHI", "LIST", {unit, step}};
}

inline PresDecl list_assoc_goal(const SigPtr& sig) {
  Variable x{"x", "List", 0}, y{"y", "List", 0}, z{"z", "List", 0};
  FuncDecl add = sig->funcs[2];
  Sentence assoc =
      forall({x, y, z}, eq(tapp(add, {tapp(add, {tvar(x), tvar(y)}), tvar(z)}),
                           tapp(add, {tvar(x), tapp(add, {tvar(y), tvar(z)})})));
  return PresDecl{"ASSOC", "LIST", {assoc}};
}

/// The 7-element model: the appendix counterexample (term model with an
/// extra nil generator, add defined by induction on its second argument)
/// quotiented to lists of length at most 2 over a single Elt value. It
/// satisfies the add axioms and falsifies associativity.
inline FiniteModel list_saturated_model(const SigPtr& sig) {
  FiniteModel m;
  m.sig = sig;
  m.carriers["Elt"] = {"e"};
  m.carriers["List"] = {"E0", "E1", "E2", "N0", "N1", "N2"};
  FuncDecl empty = sig->funcs[0], cons = sig->funcs[1], add = sig->funcs[2];
  m.tables[empty] = {0};
  // cons appends one element and saturates at length 2
  std::vector<int> cons_map = {1, 2, 2, 4, 5, 5};
  m.tables[cons] = cons_map;
  // add(x, E0) = x; add along cons; add(x, N0) from the appendix clauses
  std::vector<int> g = {1, 1, 2, 3, 4, 5};  // add(-, N0)
  std::vector<int> table(36, -1);
  auto put = [&](int x, int y, int v) { table[static_cast<std::size_t>(y) * 6 + x] = v; };
  for (int x = 0; x < 6; ++x) {
    put(x, 0, x);
    put(x, 1, cons_map[x]);
    put(x, 2, cons_map[cons_map[x]]);
    put(x, 3, g[x]);
    put(x, 4, cons_map[g[x]]);
    put(x, 5, cons_map[cons_map[g[x]]]);
  }
  m.tables[add] = table;
  return m;
}

/// The 4-element constructor-generated cousin: lists of length at most 2
/// with no nil generator; constructor-based, and associative.
inline FiniteModel list_ctor3_model(const SigPtr& sig) {
  FiniteModel m;
  m.sig = sig;
  m.carriers["Elt"] = {"e"};
  m.carriers["List"] = {"E0", "E1", "E2"};
  FuncDecl empty = sig->funcs[0], cons = sig->funcs[1], add = sig->funcs[2];
  m.tables[empty] = {0};
  std::vector<int> cons_map = {1, 2, 2};
  m.tables[cons] = cons_map;
  std::vector<int> table(9, -1);
  auto put = [&](int x, int y, int v) { table[static_cast<std::size_t>(y) * 3 + x] = v; };
  for (int x = 0; x < 3; ++x) {
    put(x, 0, x);
    put(x, 1, cons_map[x]);
    put(x, 2, cons_map[cons_map[x]]);
  }
  m.tables[add] = table;
  return m;
}

}  // namespace detail

inline SpecFile fixtures(const std::string& name, const FixtureParams& params = {}) {
  SpecFile out;
  int k = params.k;

  if (name == "uls") {
    // countably many singleton sorts, truncated: each s_n carries exactly one
    // constant and the theory pins every carrier to that constant
    Signature sig;
    std::vector<FuncDecl> consts;
    for (int n = 0; n < k; ++n) {
      std::string s = "s" + std::to_string(n);
      sig.sorts.push_back(s);
      consts.push_back(FuncDecl{"c" + std::to_string(n), {}, s});
    }
    sig.funcs = consts;
    SigPtr sp = make_sig(std::move(sig));
    out.signatures.push_back(SigDecl{"ULS", sp});
    PresDecl gamma{"GAMMA", "ULS", {}};
    for (int n = 0; n < k; ++n) {
      Variable x{"x", "s" + std::to_string(n), 0};
      gamma.sentences.push_back(forall({x}, eq(tvar(x), tapp(consts[n]))));
    }
    out.presentations.push_back(std::move(gamma));
    FiniteModel m;
    m.sig = sp;
    for (int n = 0; n < k; ++n) {
      m.carriers["s" + std::to_string(n)] = {"a" + std::to_string(n)};
      m.tables[consts[n]] = {0};
    }
    out.models.push_back(ModelDecl{"M", "ULS", std::move(m)});
    return out;
  }

  if (name == "example28") {
    // one transition in finitely many steps, but no transition in exactly n
    // steps whenever s_n is inhabited
    Signature sig;
    for (int n = 0; n < k; ++n) sig.sorts.push_back("s" + std::to_string(n));
    FuncDecl c{"c", {}, "s0"}, d{"d", {}, "s0"};
    sig.funcs = {c, d};
    sig.labels = {"l"};
    SigPtr sp = make_sig(std::move(sig));
    out.signatures.push_back(SigDecl{"EX28", sp});
    PresDecl phi{"PHI", "EX28", {}};
    phi.sentences.push_back(trans(astar(alabel("l")), tapp(c), tapp(d)));
    for (int n = 0; n < k; ++n) {
      Variable x{"x", "s" + std::to_string(n), 0};
      Sentence inhabited = exists({x}, truth());
      Sentence no_n_step;
      if (n == 0) {
        no_n_step = snot(eq(tapp(c), tapp(d)));
      } else {
        Action a = alabel("l");
        for (int i = 1; i < n; ++i) a = aseq(alabel("l"), std::move(a));
        no_n_step = snot(trans(std::move(a), tapp(c), tapp(d)));
      }
      phi.sentences.push_back(implies(std::move(inhabited), std::move(no_n_step)));
    }
    out.presentations.push_back(std::move(phi));
    // a witness model: two points in s_0, one step, all other sorts empty
    FiniteModel m;
    m.sig = sp;
    for (int n = 0; n < k; ++n) m.carriers["s" + std::to_string(n)] = {};
    m.carriers["s0"] = {"v0", "v1"};
    m.tables[c] = {0};
    m.tables[d] = {1};
    m.rels[{"l", "s0"}] = {{0, 1}};
    out.models.push_back(ModelDecl{"W", "EX28", std::move(m)});
    return out;
  }

  if (name == "list" || name == "list-saturated" || name == "list-ctor3" || name == "list-tc") {
    SigPtr sig = detail::list_signature();
    out.signatures.push_back(SigDecl{"LIST", sig});
    out.presentations.push_back(detail::list_axioms(sig));
    out.presentations.push_back(detail::list_assoc_goal(sig));
    if (name == "list-saturated")
      out.models.push_back(ModelDecl{"SAT7", "LIST", detail::list_saturated_model(sig)});
    if (name == "list-ctor3")
      out.models.push_back(ModelDecl{"CTOR3", "LIST", detail::list_ctor3_model(sig)});
    if (name == "list-tc") {
      LogicType tc = build_Tc(sig, params.depth);
      out.types.push_back(TypeDecl{"TC", "LIST", std::move(tc)});
    }
    return out;
  }

  if (name == "inf") {
    InfFixture fixture = build_inf_type(k);
    out.signatures.push_back(SigDecl{"INF", fixture.sig});
    out.presentations.push_back(PresDecl{"PHI", "INF", fixture.phi});
    out.types.push_back(TypeDecl{"T", "INF", fixture.type});
    return out;
  }

  if (name == "tf") {
    // the finite-sort type: "at least n distinct elements" for n up to k
    Signature sig;
    sig.sorts = {"s"};
    sig.finite_sorts = {"s"};
    SigPtr sp = make_sig(std::move(sig));
    out.signatures.push_back(SigDecl{"FIN", sp});
    LogicType t;
    t.base = sp;
    t.truncation_depth = k;
    for (int n = 1; n <= k; ++n) {
      VarBlock xs;
      for (int i = 1; i <= n; ++i) xs.push_back(Variable{"x" + std::to_string(i), "s", 0});
      t.sentences.push_back(exists(xs, distinct_elements(xs)));
    }
    out.types.push_back(TypeDecl{"TF", "FIN", std::move(t)});
    return out;
  }

  if (name == "forcing-chain") {
    Signature base;
    base.sorts = {"s"};
    FuncDecl c{"c", {}, "s"}, d{"d", {}, "s"};
    base.funcs = {c, d};
    base.labels = {"l"};
    SigPtr sp = make_sig(std::move(base));
    out.signatures.push_back(SigDecl{"BASE", sp});

    ForcingDecl decl;
    decl.name = "F";
    Sentence cc = eq(tapp(c), tapp(c)), dd = eq(tapp(d), tapp(d));
    Sentence cd = eq(tapp(c), tapp(d)), dc = eq(tapp(d), tapp(c));
    Sentence lcd = trans(alabel("l"), tapp(c), tapp(d));
    ForcingCondition p0{"p0", sp, {}, {}, {}};
    ForcingCondition p1{"p1", sp, {cc, dd, lcd}, {}, {}};
    ForcingCondition p2{"p2", sp,
                        {cc, dd, lcd, cd, dc, trans(alabel("l"), tapp(c), tapp(c)),
                         trans(alabel("l"), tapp(d), tapp(c)), trans(alabel("l"), tapp(d), tapp(d))},
                        {},
                        {}};
    decl.property.conds = {p0, p1, p2};
    decl.cond_sig_names = {"BASE", "BASE", "BASE"};
    close_order(decl.property, {{0, 1}, {1, 2}});
    out.forcings.push_back(std::move(decl));

    PresDecl pool{"POOL", "BASE", {cd, lcd, trans(astar(alabel("l")), tapp(c), tapp(d))}};
    out.presentations.push_back(std::move(pool));
    return out;
  }

  throw UnknownFixture("unknown fixture '" + name + "'");
}

}  // namespace ta
