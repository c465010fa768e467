// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "ta/fixtures.hpp"
#include "ta/fuzz.hpp"
#include "ta/types.hpp"

using namespace ta;

namespace {

EnumBounds bounds_of(std::map<std::string, int> sizes) {
  EnumBounds b;
  b.max_size = std::move(sizes);
  return b;
}

}  // namespace

TEST_CASE("every finite model omits the distinct-elements type by pigeonhole") {
  SpecFile tf = fixtures("tf", {.k = 4});
  const LogicType& type = tf.types[0].type;
  for (int size = 0; size <= 3; ++size) {
    FiniteModel m;
    m.sig = tf.signatures[0].sig;
    std::vector<std::string> elems;
    for (int i = 0; i < size; ++i) elems.push_back("e" + std::to_string(i));
    m.carriers["s"] = elems;
    REQUIRE_FALSE(realizes(m, type).has_value());
  }
}

TEST_CASE("the generated-list model omits T^c") {
  SpecFile fx = fixtures("list-ctor3");
  LogicType tc = build_Tc(fx.signatures[0].sig, 4);
  REQUIRE_FALSE(realizes(fx.models[0].model, tc).has_value());
}

TEST_CASE("the nil-branch model realizes T^c at N0") {
  SpecFile fx = fixtures("list-saturated");
  LogicType tc = build_Tc(fx.signatures[0].sig, 4);
  auto witness = realizes(fx.models[0].model, tc);
  REQUIRE(witness.has_value());
  Variable x{"x_List", "List", 0};
  REQUIRE(witness->at(x) == 3);  // N0 is the least non-generated element
}

TEST_CASE("build_Tc enumerates inequations against constructor terms") {
  SpecFile list = fixtures("list");
  LogicType t1 = build_Tc(list.signatures[0].sig, 1);
  REQUIRE(t1.block == VarBlock{Variable{"x_List", "List", 0}});
  REQUIRE(t1.sentences.size() == 1);  // x != empty
  LogicType t2 = build_Tc(list.signatures[0].sig, 2, 1);
  REQUIRE(t2.sentences.size() == 2);  // plus forall y . x != cons(empty, y)
  REQUIRE(check_type(t2).empty());
}

TEST_CASE("build_Tc on a constants-only constructor signature") {
  Signature sig;
  sig.sorts = {"s"};
  FuncDecl c{"c", {}, "s"};
  sig.funcs = {c};
  sig.ctor_funcs = {c};
  LogicType t = build_Tc(make_sig(sig), 3);
  REQUIRE(t.sentences.size() == 1);  // x != c
  REQUIRE(t.block.size() == 1);
}

TEST_CASE("build_Tc without constructors is an error") {
  Signature sig;
  sig.sorts = {"s"};
  REQUIRE_THROWS_AS(build_Tc(make_sig(sig), 2), MissingCtors);
}

TEST_CASE("the omission/realization dichotomy is definitional") {
  Rng rng(11);
  SpecFile list = fixtures("list");
  LogicType tc = build_Tc(list.signatures[0].sig, 3);
  for (int i = 0; i < 40; ++i) {
    FiniteModel m = fuzz::random_model(list.signatures[0].sig, rng, 2, true);
    bool realized = realizes(m, tc).has_value();
    bool omitted = !realizes(m, tc).has_value();
    REQUIRE(realized != omitted);
  }
}

TEST_CASE("omitting a type implies omitting every superset") {
  Rng rng(12);
  SpecFile list = fixtures("list");
  SigPtr sig = list.signatures[0].sig;
  LogicType tc = build_Tc(sig, 2);
  LogicType bigger = tc;
  bigger.sentences.push_back(truth());
  for (int i = 0; i < 40; ++i) {
    FiniteModel m = fuzz::random_model(sig, rng, 2, true);
    if (!realizes(m, tc).has_value()) REQUIRE_FALSE(realizes(m, bigger).has_value());
  }
}

TEST_CASE("the infinite-elements fixture behaves as stated") {
  InfFixture fx = build_inf_type(2);
  REQUIRE(fx.phi.size() == 2);
  REQUIRE(fx.type.sentences.size() == 2);

  // s2 inhabited with a single s1 element: phi_2 demands two distinct ones
  FiniteModel bad;
  bad.sig = fx.sig;
  bad.carriers["s1"] = {"a"};
  bad.carriers["s2"] = {"b"};
  REQUIRE_FALSE(satisfies_all(bad, fx.phi));

  // only s1 inhabited, one element: satisfies Phi and omits T
  FiniteModel good;
  good.sig = fx.sig;
  good.carriers["s1"] = {"a"};
  good.carriers["s2"] = {};
  REQUIRE(satisfies_all(good, fx.phi));
  REQUIRE_FALSE(realizes(good, fx.type).has_value());
}

TEST_CASE("search_isolation certifies an isolated type") {
  // Phi forces everything equal to c, so T = { x = c } is isolated with
  // D = {d}, Gamma empty, theta(x) = d.
  Signature sig;
  sig.sorts = {"s"};
  FuncDecl c{"c", {}, "s"};
  sig.funcs = {c};
  SigPtr sp = make_sig(sig);
  Variable x{"x", "s", 0};
  std::vector<Sentence> phi = {forall({x}, eq(tvar(x), tapp(c)))};

  LogicType realized;
  realized.base = sp;
  realized.block = {x};
  realized.sentences = {eq(tvar(x), tapp(c))};
  IsolationBounds bounds;
  bounds.model_bounds = bounds_of({{"s", 2}});
  auto hit = search_isolation(sp, phi, realized, {}, bounds);
  REQUIRE(hit.has_value());
  REQUIRE(hit->gamma.empty());
  REQUIRE(hit->theta.at(x) == tconst("d1_s", "s"));

  LogicType omitted;
  omitted.base = sp;
  omitted.block = {x};
  omitted.sentences = {neq(tvar(x), tapp(c))};
  REQUIRE_FALSE(search_isolation(sp, phi, omitted, {}, bounds).has_value());
}

TEST_CASE("search_isolation returns nothing for an unsatisfiable type") {
  Signature sig;
  sig.sorts = {"s"};
  FuncDecl c{"c", {}, "s"};
  sig.funcs = {c};
  SigPtr sp = make_sig(sig);
  Variable x{"x", "s", 0};
  LogicType t;
  t.base = sp;
  t.block = {x};
  t.sentences = {falsity()};
  IsolationBounds bounds;
  bounds.model_bounds = bounds_of({{"s", 2}});
  REQUIRE_FALSE(search_isolation(sp, {}, t, {truth()}, bounds).has_value());
}

TEST_CASE("the inf fixture is not isolated within small bounds") {
  InfFixture fx = build_inf_type(3);
  Variable y{"y", "s1", 0};
  std::vector<Sentence> pool = {exists({y}, truth())};
  IsolationBounds bounds;
  bounds.max_d_per_sort = 1;
  bounds.max_gamma = 1;
  // s1 up to 4 keeps theta(T) satisfiable, so the entailment side does the work
  bounds.model_bounds = bounds_of({{"s1", 4}, {"s2", 1}, {"s3", 1}});
  auto hit = search_isolation(fx.sig, fx.phi, fx.type, pool, bounds);
  REQUIRE_FALSE(hit.has_value());
}
