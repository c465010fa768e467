// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "ta/congruence.hpp"
#include "ta/fixtures.hpp"
#include "ta/forcing.hpp"
#include "ta/fuzz.hpp"

using namespace ta;

namespace {

SigPtr consts_sig(std::vector<std::string> names, std::vector<std::string> labels = {}) {
  Signature sig;
  sig.sorts = {"s"};
  for (const auto& n : names) sig.funcs.push_back(FuncDecl{n, {}, "s"});
  sig.labels = std::move(labels);
  return make_sig(std::move(sig));
}

Term k(const std::string& name) { return tconst(name, "s"); }

ForcingProperty chain_property() {
  return fixtures("forcing-chain").forcings[0].property;
}

}  // namespace

TEST_CASE("congruence closure: no equations, identity partition") {
  CongruenceClosure cc;
  REQUIRE_FALSE(cc.query(k("a"), k("b")));
  REQUIRE(cc.query(k("a"), k("a")));
}

TEST_CASE("congruence closure propagates through contexts") {
  CongruenceClosure cc;
  FuncDecl f{"f", {"s"}, "s"};
  cc.add_equation(k("a"), k("b"));
  REQUIRE(cc.query(tapp(f, {k("a")}), tapp(f, {k("b")})));
  REQUIRE_FALSE(cc.query(tapp(f, {k("a")}), k("a")));
}

TEST_CASE("congruence closure chains under f(a)=a") {
  CongruenceClosure cc;
  FuncDecl f{"f", {"s"}, "s"};
  cc.add_equation(tapp(f, {k("a")}), k("a"));
  REQUIRE(cc.query(tapp(f, {tapp(f, {k("a")})}), k("a")));
  REQUIRE(cc.query(tapp(f, {tapp(f, {tapp(f, {k("a")})})}), k("a")));
}

TEST_CASE("entails_atomic decides ground consequence exactly") {
  std::vector<Sentence> atoms = {eq(k("c"), k("d")), trans(alabel("l"), k("d"), k("e"))};
  REQUIRE(entails_atomic(atoms, eq(k("d"), k("c"))));
  REQUIRE(entails_atomic(atoms, trans(alabel("l"), k("c"), k("e"))));
  REQUIRE_FALSE(entails_atomic(atoms, eq(k("c"), k("e"))));
  REQUIRE_FALSE(entails_atomic(atoms, trans(alabel("l"), k("e"), k("c"))));
}

TEST_CASE("validate_forcing_property accepts a single empty condition") {
  Signature sig;
  sig.sorts = {"s"};
  sig.labels = {"l"};  // no ground terms, so no entailed atoms to house
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"p0", make_sig(sig), {}, {}});
  close_order(p, {});
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
}

TEST_CASE("validate_forcing_property flags a non-monotone atom set") {
  SigPtr sig = consts_sig({"c", "d"});
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"p0", sig, {eq(k("c"), k("c")), eq(k("d"), k("d"))}, {}});
  p.conds.push_back(ForcingCondition{"p1", sig, {eq(k("c"), k("c"))}, {}});
  close_order(p, {{0, 1}});
  ValidationReport report = validate_forcing_property(p, SearchBounds{});
  bool found = false;
  for (const auto& v : report.items())
    if (v.message.find("monotone") != std::string::npos) found = true;
  REQUIRE(found);
}

TEST_CASE("validate_forcing_property checks axiom 4 through congruence") {
  SigPtr sig = consts_sig({"c", "d", "e"});
  auto refl = [&](std::vector<Sentence> atoms) {
    for (const auto& n : {"c", "d", "e"}) atoms.push_back(eq(k(n), k(n)));
    return atoms;
  };
  ForcingProperty p;
  p.conds.push_back(
      ForcingCondition{"p0", sig, refl({eq(k("c"), k("d")), eq(k("d"), k("e")),
                                        eq(k("d"), k("c")), eq(k("e"), k("d"))}), {}});
  close_order(p, {});
  ValidationReport report = validate_forcing_property(p, SearchBounds{});
  bool axiom4 = false;
  for (const auto& v : report.items())
    if (v.message.find("axiom 4") != std::string::npos &&
        v.message.find("c = e") != std::string::npos)
      axiom4 = true;
  REQUIRE(axiom4);  // c = e is entailed but housed nowhere
}

TEST_CASE("the chain fixture is a valid forcing property") {
  REQUIRE(validate_forcing_property(chain_property(), SearchBounds{}).empty());
}

TEST_CASE("forcing: atomic membership and star unfolding") {
  SigPtr sig = consts_sig({"c", "d", "e"}, {"l"});
  auto refl = [&](std::vector<Sentence> atoms) {
    for (const auto& n : {"c", "d", "e"}) atoms.push_back(eq(k(n), k(n)));
    return atoms;
  };
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{
      "p0", sig, refl({trans(alabel("l"), k("c"), k("e")), trans(alabel("l"), k("e"), k("d"))}),
      {}});
  close_order(p, {});
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
  ForcingEngine engine(p, SearchBounds{});
  REQUIRE(engine.forces(0, trans(alabel("l"), k("c"), k("e"))));
  REQUIRE_FALSE(engine.forces(0, trans(alabel("l"), k("c"), k("d"))));
  // two steps through the intermediate witness e
  REQUIRE(engine.forces(0, trans(aseq(alabel("l"), alabel("l")), k("c"), k("d"))));
  REQUIRE(engine.forces(0, trans(astar(alabel("l")), k("c"), k("d"))));
  // the zero power reads as a forced equation: c = c is in f(p0)
  REQUIRE(engine.forces(0, trans(astar(alabel("l")), k("c"), k("c"))));
  // union picks either branch
  REQUIRE(engine.forces(0, trans(aunion(alabel("l"), alabel("l")), k("c"), k("e"))));
}

TEST_CASE("forcing negation quantifies over extensions") {
  ForcingProperty p = chain_property();
  ForcingEngine engine(p, SearchBounds{});
  Sentence lcd = trans(alabel("l"), k("c"), k("d"));
  // p1 forces l(c,d), so p0 does not force its negation
  REQUIRE_FALSE(engine.forces(0, lcd));
  REQUIRE_FALSE(engine.forces(0, snot(lcd)));
  REQUIRE(engine.forces(1, lcd));
  // nothing above p0 forces c = e-like falsities over this chain
  Sentence weird = trans(alabel("l"), k("d"), k("c"));
  REQUIRE_FALSE(engine.forces(0, weird));
  REQUIRE_FALSE(engine.forces(1, snot(weird)));  // p2 forces it
  REQUIRE(engine.forces(2, weird));
}

TEST_CASE("forcing: disjunction and existentials use ground witnesses") {
  ForcingProperty p = chain_property();
  ForcingEngine engine(p, SearchBounds{});
  Sentence lcd = trans(alabel("l"), k("c"), k("d"));
  REQUIRE(engine.forces(1, sor({falsity(), lcd})));
  Variable x{"x", "s", 0};
  REQUIRE(engine.forces(1, exists({x}, trans(alabel("l"), tvar(x), k("d")))));
  REQUIRE_FALSE(engine.forces(0, exists({x}, trans(alabel("l"), tvar(x), k("d")))));
}

TEST_CASE("forcing laws hold on the chain fixture") {
  ForcingProperty p = chain_property();
  ForcingEngine engine(p, SearchBounds{});
  std::vector<Sentence> pool = fixtures("forcing-chain").presentations[0].sentences;
  for (int cond = 0; cond < p.size(); ++cond)
    for (const auto& phi : pool) {
      bool f = engine.forces(cond, phi);
      if (f)
        for (int q : p.extensions(cond)) REQUIRE(engine.forces(q, phi));
      REQUIRE_FALSE((f && engine.forces(cond, snot(phi))));
      if (f) REQUIRE(engine.forces(cond, snot(snot(phi))));
      bool nn = engine.forces(cond, snot(snot(phi)));
      bool dense = true;
      for (int q : p.extensions(cond)) {
        bool some = false;
        for (int r : p.extensions(q)) some = some || engine.forces(r, phi);
        dense = dense && some;
      }
      REQUIRE(nn == dense);
      if (f) REQUIRE(engine.weakly_forces(cond, phi));
    }
}

TEST_CASE("distance counts added symbols and sentences") {
  SigPtr small = consts_sig({"c"});
  SigPtr big = consts_sig({"c", "d"});
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"p0", small, {eq(k("c"), k("c"))}, {}});
  p.conds.push_back(ForcingCondition{
      "p1", big, {eq(k("c"), k("c")), eq(k("d"), k("d"))}, {truth()}});
  p.conds.push_back(ForcingCondition{
      "p2", big, {eq(k("c"), k("c")), eq(k("d"), k("d"))}, {truth(), falsity()}});
  close_order(p, {{0, 1}, {1, 2}});
  REQUIRE(distance(p, 0, 0) == 0);
  REQUIRE(distance(p, 0, 1) == 2);  // one constant, one sentence
  REQUIRE(distance(p, 1, 2) == 1);
  REQUIRE(distance(p, 0, 2) == distance(p, 0, 1) + distance(p, 1, 2));
  REQUIRE_THROWS_AS(distance(p, 1, 0), NotComparable);
}

TEST_CASE("weak forcing is densely-forced truth") {
  // diamond: 0 below a and b, both below top; phi forced at b and top only
  SigPtr sig = consts_sig({"c", "d"}, {"l"});
  std::vector<Sentence> refl = {eq(k("c"), k("c")), eq(k("d"), k("d"))};
  std::vector<Sentence> with_l = refl;
  with_l.push_back(trans(alabel("l"), k("c"), k("d")));
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"bot", sig, refl, {}});
  p.conds.push_back(ForcingCondition{"a", sig, refl, {}});
  p.conds.push_back(ForcingCondition{"b", sig, with_l, {}});
  p.conds.push_back(ForcingCondition{"top", sig, with_l, {}});
  close_order(p, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
  ForcingEngine engine(p, SearchBounds{});
  Sentence phi = trans(alabel("l"), k("c"), k("d"));
  REQUIRE_FALSE(engine.forces(0, phi));
  REQUIRE(engine.weakly_forces(0, phi));  // every branch reaches a forcer
  REQUIRE(engine.forces(2, phi));
  REQUIRE(engine.weakly_forces(2, phi));
  // a sentence forced nowhere is weakly forced nowhere
  Sentence nowhere = trans(alabel("l"), k("d"), k("c"));
  REQUIRE_FALSE(engine.weakly_forces(0, nowhere));
}

TEST_CASE("extend_to_generic on a single condition decides the pool") {
  Signature sig;
  sig.sorts = {"s"};
  sig.labels = {"l"};
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"p0", make_sig(sig), {}, {}});
  close_order(p, {});
  ForcingEngine engine(p, SearchBounds{});
  Variable x{"x", "s", 0};
  std::vector<Sentence> pool = {exists({x}, truth())};
  GenericIdeal ideal = extend_to_generic(engine, 0, pool);
  REQUIRE(ideal.members == std::vector<int>{0});
  REQUIRE(ideal.decisions.size() == 1);
  REQUIRE_FALSE(ideal.decisions[0].positive);
  REQUIRE(validate_generic_ideal(engine, ideal, pool).empty());
}

TEST_CASE("extend_to_generic walks a growing chain positively") {
  ForcingProperty p = chain_property();
  ForcingEngine engine(p, SearchBounds{});
  std::vector<Sentence> pool = {trans(alabel("l"), k("c"), k("d")), eq(k("c"), k("d"))};
  GenericIdeal ideal = extend_to_generic(engine, 0, pool);
  REQUIRE(ideal.members == std::vector<int>{0, 1, 2});
  REQUIRE(ideal.decisions[0].positive);
  REQUIRE(ideal.decisions[0].condition == 1);  // minimal forcing extension
  REQUIRE(ideal.decisions[1].positive);
  REQUIRE(ideal.decisions[1].condition == 2);
  REQUIRE(validate_generic_ideal(engine, ideal, pool).empty());
}

TEST_CASE("extend_to_generic reports missing upper bounds") {
  // two incomparable mid conditions introduce private constants; a pool
  // sentence about b's constant strands a chain that moved into a
  SigPtr base = consts_sig({"c"});
  SigPtr with_ea = consts_sig({"c", "ea"});
  SigPtr with_eb = consts_sig({"c", "eb"});
  Sentence cc = eq(k("c"), k("c"));
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{"bot", base, {cc}, {}});
  p.conds.push_back(ForcingCondition{"a", with_ea, {cc, eq(k("ea"), k("ea")), eq(k("ea"), k("c")), eq(k("c"), k("ea"))}, {}});
  p.conds.push_back(ForcingCondition{"b", with_eb, {cc, eq(k("eb"), k("eb")), eq(k("eb"), k("c")), eq(k("c"), k("eb"))}, {}});
  close_order(p, {{0, 1}, {0, 2}});
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
  ForcingEngine engine(p, SearchBounds{});
  std::vector<Sentence> pool = {eq(k("ea"), k("c")), eq(k("eb"), k("c"))};
  REQUIRE_THROWS_AS(extend_to_generic(engine, 0, pool), DirectednessFailure);
}

TEST_CASE("generic model: a single forced equation merges two constants") {
  SigPtr sig = consts_sig({"c", "d"});
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{
      "p0", sig, {eq(k("c"), k("c")), eq(k("d"), k("d")), eq(k("c"), k("d")), eq(k("d"), k("c"))},
      {}});
  close_order(p, {});
  GenericIdeal ideal{{0}, {}};
  TermQuotientModel model = generic_model(p, ideal, SearchBounds{});
  REQUIRE(model.equal(k("c"), k("d")));
  REQUIRE(model.satisfies(eq(k("c"), k("d"))));
  REQUIRE(model.carrier("s").size() == 1);
}

TEST_CASE("generic model: congruence closure identifies f(e) with d") {
  Signature sig;
  sig.sorts = {"s"};
  sig.funcs = {FuncDecl{"c", {}, "s"}, FuncDecl{"d", {}, "s"}, FuncDecl{"e", {}, "s"},
               FuncDecl{"f", {"s"}, "s"}};
  SigPtr sp = make_sig(sig);
  FuncDecl f = sig.funcs[3];
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{
      "p0", sp, {eq(tapp(f, {k("c")}), k("d")), eq(k("c"), k("e"))}, {}});
  close_order(p, {});
  GenericIdeal ideal{{0}, {}};
  TermQuotientModel model = generic_model(p, ideal, SearchBounds{});
  REQUIRE(model.equal(tapp(f, {k("e")}), k("d")));
}

TEST_CASE("generic model: forced transitions close under star") {
  SigPtr sig = consts_sig({"c", "d", "e"}, {"l"});
  ForcingProperty p;
  p.conds.push_back(ForcingCondition{
      "p0", sig, {trans(alabel("l"), k("c"), k("d")), trans(alabel("l"), k("d"), k("e"))}, {}});
  close_order(p, {});
  GenericIdeal ideal{{0}, {}};
  TermQuotientModel model = generic_model(p, ideal, SearchBounds{});
  REQUIRE(model.satisfies(trans(astar(alabel("l")), k("c"), k("e"))));
  REQUIRE_FALSE(model.satisfies(trans(astar(alabel("l")), k("e"), k("c"))));
  Variable x{"x", "s", 0};
  REQUIRE(model.satisfies(exists({x}, trans(alabel("l"), k("c"), tvar(x)))));
}

TEST_CASE("build_semantic_forcing in dls mode enumerates expansions") {
  SigPtr base = consts_sig({"c"});
  SemanticForcingSpec spec;
  spec.mode = SemanticMode::Dls;
  spec.base = base;
  spec.fresh_constants = {{"h0", "s"}};
  FiniteModel m;
  m.sig = base;
  m.carriers["s"] = {"x", "y"};
  m.tables[FuncDecl{"c", {}, "s"}] = {0};
  spec.dls_model = m;
  spec.sentence_pool = {eq(tconst("h0", "s"), k("c"))};
  spec.model_bounds.max_size = {{"s", 2}};
  ForcingProperty p = build_semantic_forcing(spec);
  // conditions: no constant and no sentence = 1; h0 -> x with and without
  // the pool sentence (true under h0 = x) = 2; h0 -> y only without it = 1
  REQUIRE(p.size() == 4);
  REQUIRE(p.least >= 0);
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
}

TEST_CASE("build_semantic_forcing in ott mode excludes empty classes") {
  SigPtr base = consts_sig({"c", "d"});
  SemanticForcingSpec spec;
  spec.mode = SemanticMode::Ott;
  spec.base = base;
  spec.ott_phi = {eq(k("c"), k("d"))};
  spec.sentence_pool = {snot(eq(k("c"), k("d")))};
  spec.model_bounds.max_size = {{"s", 2}};
  ForcingProperty p = build_semantic_forcing(spec);
  // the pool sentence contradicts Phi, so only the empty-Gamma condition exists
  REQUIRE(p.size() == 1);
  // f(0) contains the atomic consequences of Phi
  const auto& atoms = p.conds[0].atoms;
  REQUIRE(std::find(atoms.begin(), atoms.end(), eq(k("c"), k("d"))) != atoms.end());
  REQUIRE(std::find(atoms.begin(), atoms.end(), eq(k("c"), k("c"))) != atoms.end());
}

TEST_CASE("semantic forcing theorem at bounded scale") {
  // with a negation-closed sentence pool, bounded-class satisfaction and
  // weak forcing agree on every undiagnosed instance
  SigPtr base = consts_sig({"c", "d"});
  SemanticForcingSpec spec;
  spec.mode = SemanticMode::Ott;
  spec.base = base;
  spec.ott_phi = {};
  Sentence cd = eq(k("c"), k("d"));
  spec.sentence_pool = {cd, snot(cd)};
  spec.model_bounds.max_size = {{"s", 2}};
  ForcingProperty p = build_semantic_forcing(spec);
  REQUIRE(p.size() == 3);  // {}, {c=d}, {not c=d}; the pair is inconsistent
  REQUIRE(validate_forcing_property(p, SearchBounds{}).empty());
  ForcingEngine engine(p, SearchBounds{});
  std::vector<Sentence> statements = {cd, snot(cd), eq(k("c"), k("c"))};
  auto rows = compare_semantic_forcing(spec, p, engine, statements);
  REQUIRE_FALSE(rows.empty());
  int asserted = 0;
  for (const auto& row : rows) {
    if (!row.diagnosed) {
      INFO("condition " << row.condition << ", " << print_sentence(row.phi));
      REQUIRE(row.semantic == row.weak);
      ++asserted;
    }
  }
  REQUIRE(asserted >= 6);  // both pool sentences at every condition
}

TEST_CASE("a truncated pool may break one direction, and is diagnosed") {
  SigPtr base = consts_sig({"c", "d"});
  SemanticForcingSpec spec;
  spec.mode = SemanticMode::Ott;
  spec.base = base;
  Sentence cd = eq(k("c"), k("d"));
  spec.sentence_pool = {cd};  // no negation: the proof's moves are missing
  spec.model_bounds.max_size = {{"s", 2}};
  ForcingProperty p = build_semantic_forcing(spec);
  ForcingEngine engine(p, SearchBounds{});
  auto rows = compare_semantic_forcing(spec, p, engine, {cd});
  bool found_disagreement = false;
  for (const auto& row : rows)
    if (row.semantic != row.weak) {
      found_disagreement = true;
      REQUIRE(row.diagnosed);  // reported, not trusted
    }
  REQUIRE(found_disagreement);
}

TEST_CASE("random forcing properties validate and satisfy the forcing laws") {
  Rng rng(909);
  for (int round = 0; round < 12; ++round) {
    RandomForcing rf = random_forcing_property(rng);
    SearchBounds bounds;
    REQUIRE(validate_forcing_property(rf.property, bounds).empty());
    ForcingEngine engine(rf.property, bounds);
    for (int cond = 0; cond < rf.property.size(); ++cond)
      for (const auto& phi : rf.pool) {
        bool f = engine.forces(cond, phi);
        if (f) {
          for (int q : rf.property.extensions(cond)) REQUIRE(engine.forces(q, phi));
          REQUIRE(engine.forces(cond, snot(snot(phi))));
          REQUIRE(engine.weakly_forces(cond, phi));
        }
        REQUIRE_FALSE((f && engine.forces(cond, snot(phi))));
      }
  }
}

TEST_CASE("generic models of random properties are adequate on their pools") {
  Rng rng(910);
  for (int round = 0; round < 12; ++round) {
    RandomForcing rf = random_forcing_property(rng);
    SearchBounds bounds;
    ForcingEngine engine(rf.property, bounds);
    GenericIdeal ideal = extend_to_generic(engine, rf.property.least, rf.pool);
    REQUIRE(validate_generic_ideal(engine, ideal, rf.pool).empty());
    TermQuotientModel model = generic_model(rf.property, ideal, bounds);
    for (const auto& d : ideal.decisions) {
      bool forced = ideal_forces(engine, ideal, d.phi);
      REQUIRE(forced == d.positive);
      INFO("sentence " << print_sentence(d.phi));
      REQUIRE(model.satisfies(d.phi) == forced);
    }
  }
}
