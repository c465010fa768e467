// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "ta/classes.hpp"
#include "ta/fixtures.hpp"
#include "ta/fuzz.hpp"

using namespace ta;

namespace {

SigPtr list_sig() { return fixtures("list").signatures[0].sig; }

EnumBounds bounds_of(std::map<std::string, int> sizes) {
  EnumBounds b;
  b.max_size = std::move(sizes);
  return b;
}

}  // namespace

TEST_CASE("is_reachable: junk elements are unreachable with a witness") {
  SigPtr sig = list_sig();
  FiniteModel m;
  m.sig = sig;
  m.carriers["Elt"] = {};
  m.carriers["List"] = {"E0", "E1"};
  m.tables[sig->funcs[0]] = {0};           // empty -> E0
  m.tables[sig->funcs[1]] = {};            // cons has an empty domain
  m.tables[sig->funcs[2]] = {0, 0, 0, 0};  // add total
  REQUIRE(validate_model(m).empty());
  ReachabilityCertificate cert = is_reachable(m);
  REQUIRE_FALSE(cert.reachable);
  REQUIRE(cert.bad_sort == "List");
  REQUIRE(cert.bad_element == 1);
}

TEST_CASE("is_reachable: the ULS fixture is reachable with term witnesses") {
  SpecFile uls = fixtures("uls");
  ReachabilityCertificate cert = is_reachable(uls.models[0].model);
  REQUIRE(cert.reachable);
  for (const auto& [key, term] : cert.witnesses) {
    REQUIRE(is_ground(term));
    REQUIRE(eval_term(uls.models[0].model, {}, term) == key.second);
  }
}

TEST_CASE("is_reachable: a loose element is not the value of any ground term") {
  SpecFile fx = fixtures("list-ctor3");
  ReachabilityCertificate cert = is_reachable(fx.models[0].model);
  REQUIRE_FALSE(cert.reachable);
  REQUIRE(cert.bad_sort == "Elt");
}

TEST_CASE("is_constructor_based: the saturated 3-chain is generated") {
  SpecFile fx = fixtures("list-ctor3");
  CtorCertificate cert = is_constructor_based(fx.models[0].model);
  REQUIRE(cert.constructor_based);
}

TEST_CASE("is_constructor_based: the nil-branch quotient is not") {
  SpecFile fx = fixtures("list-saturated");
  CtorCertificate cert = is_constructor_based(fx.models[0].model);
  REQUIRE_FALSE(cert.constructor_based);
  REQUIRE(cert.bad_sort == "List");
  REQUIRE(cert.bad_element == 3);  // N0
}

TEST_CASE("is_constructor_based: vacuous when constrained carriers are empty") {
  SigPtr sig = list_sig();
  FiniteModel m;
  m.sig = sig;
  m.carriers["Elt"] = {"e"};
  m.carriers["List"] = {};
  m.tables[sig->funcs[0]] = {};
  m.tables[sig->funcs[1]] = {};
  m.tables[sig->funcs[2]] = {};
  // not a valid model (empty constant) but the closure check itself is total
  CtorCertificate cert = is_constructor_based(m);
  REQUIRE(cert.constructor_based);
}

TEST_CASE("gamma sentences pin carrier cardinality") {
  Signature sig;
  sig.sorts = {"s"};
  SigPtr sp = make_sig(sig);
  for (int size = 0; size <= 3; ++size) {
    FiniteModel m;
    m.sig = sp;
    std::vector<std::string> elems;
    for (int i = 0; i < size; ++i) elems.push_back("e" + std::to_string(i));
    m.carriers["s"] = elems;
    for (int n = 0; n <= 3; ++n) {
      INFO("size " << size << ", n " << n);
      REQUIRE(satisfies(m, gamma_sentence("s", n)) == (size <= n));
    }
  }
}

TEST_CASE("semantic_entails finds a plain associativity counterexample") {
  SpecFile list = fixtures("list");
  Verdict v = semantic_entails(list.signatures[0].sig, list.presentations[0].sentences,
                               list.presentations[1].sentences[0], Flavor::Plain,
                               bounds_of({{"Elt", 1}, {"List", 6}}));
  REQUIRE(v.counterexample.has_value());
  REQUIRE(satisfies_all(*v.counterexample, list.presentations[0].sentences));
  REQUIRE_FALSE(satisfies(*v.counterexample, list.presentations[1].sentences[0]));
}

TEST_CASE("semantic_entails holds for associativity over constructor-based models") {
  SpecFile list = fixtures("list");
  Verdict v = semantic_entails(list.signatures[0].sig, list.presentations[0].sentences,
                               list.presentations[1].sentences[0], Flavor::CtorBased,
                               bounds_of({{"Elt", 1}, {"List", 3}}));
  REQUIRE(v.holds_up_to_bound);
}

TEST_CASE("semantic_entails: anything entails truth") {
  SpecFile list = fixtures("list");
  Verdict v = semantic_entails(list.signatures[0].sig, {}, truth(), Flavor::Plain,
                               bounds_of({{"Elt", 1}, {"List", 2}}));
  REQUIRE(v.holds_up_to_bound);
}

TEST_CASE("flavor monotonicity: ctor counterexamples are plain counterexamples") {
  SpecFile list = fixtures("list");
  // add(x, y) = x fails on a generated two-element model in both flavors
  Variable x{"x", "List", 0}, y{"y", "List", 0};
  Sentence bogus = forall({x, y}, eq(tapp(list.signatures[0].sig->funcs[2], {tvar(x), tvar(y)}),
                                     tvar(x)));
  auto bounds = bounds_of({{"Elt", 1}, {"List", 2}});
  Verdict ctor = semantic_entails(list.signatures[0].sig, list.presentations[0].sentences, bogus,
                                  Flavor::CtorBased, bounds);
  REQUIRE(ctor.counterexample.has_value());
  REQUIRE(satisfies_all(*ctor.counterexample, list.presentations[0].sentences));
  REQUIRE_FALSE(satisfies(*ctor.counterexample, bogus));
  // the same model witnesses the plain failure: the classes nest
  REQUIRE(is_constructor_based(*ctor.counterexample).constructor_based);
}

TEST_CASE("reachable models admit ground substitutions for any expansion") {
  SpecFile uls = fixtures("uls");
  const FiniteModel& m = uls.models[0].model;
  ReachabilityCertificate cert = is_reachable(m);
  REQUIRE(cert.reachable);
  // expansion with one fresh constant of sort s0; its value must be named by
  // a ground term, giving the substitution back to the base signature
  for (int value = 0; value < m.carrier_size("s0"); ++value) {
    FiniteModel expansion = m;
    expansion.sig = make_sig(extend_with_constants(*m.sig, {{"fresh", "s0"}}));
    expansion.tables[FuncDecl{"fresh", {}, "s0"}] = {value};
    Substitution theta;
    theta.base = m.sig;
    theta.c1 = {{"fresh", "s0"}};
    theta.map["fresh"] = cert.witnesses.at({"s0", value});
    FiniteModel back = reduct_along_substitution(theta, m);
    REQUIRE(back.tables.at(FuncDecl{"fresh", {}, "s0"}) ==
            expansion.tables.at(FuncDecl{"fresh", {}, "s0"}));
  }
}

TEST_CASE("constructor_terms enumerates shapes by depth") {
  SigPtr sig = list_sig();
  auto d1 = constructor_terms(*sig, "List", 1, 1, 7);
  REQUIRE(d1.size() == 1);  // empty
  auto d2 = constructor_terms(*sig, "List", 2, 1, 7);
  REQUIRE(d2.size() == 2);  // empty, cons(empty, y1)
  auto d3 = constructor_terms(*sig, "List", 3, 2, 7);
  // empty, cons(empty, y), cons(cons(empty, y), y') over a two-variable prefix
  REQUIRE(d3.size() == 1 + 2 + 4);
}

TEST_CASE("check_cb_instance: associativity premises hold up to bound") {
  SpecFile list = fixtures("list");
  SigPtr sig = list.signatures[0].sig;
  Variable hole{"xcb", "List", 1};
  // psi(x) := forall y,z . add(add(x,y),z) = add(x,add(y,z))
  Variable y{"y", "List", 0}, z{"z", "List", 0};
  FuncDecl add = sig->funcs[2];
  Sentence psi = forall({y, z}, eq(tapp(add, {tapp(add, {tvar(hole), tvar(y)}), tvar(z)}),
                                   tapp(add, {tvar(hole), tapp(add, {tvar(y), tvar(z)})})));
  InstanceReport report =
      check_cb_instance(sig, list.presentations[0].sentences, hole, psi, 2, Flavor::CtorBased,
                        bounds_of({{"Elt", 1}, {"List", 3}}), 1);
  REQUIRE(report.bounded);
  REQUIRE(report.premises.size() == 2);
  REQUIRE(report.all_hold);
}

TEST_CASE("check_cb_instance: a false goal fails on the first premise") {
  SpecFile list = fixtures("list");
  Variable hole{"xcb", "List", 1};
  InstanceReport report = check_cb_instance(list.signatures[0].sig, {}, hole, falsity(), 1,
                                            Flavor::Plain, bounds_of({{"Elt", 1}, {"List", 2}}));
  REQUIRE_FALSE(report.all_hold);
  REQUIRE(report.premises.size() == 1);
  REQUIRE(report.premises[0].counterexample.has_value());
}

TEST_CASE("check_cb_instance: no constructor constants means a vacuous table") {
  Signature sig;
  sig.sorts = {"s"};
  FuncDecl f{"f", {"s"}, "s"};
  sig.funcs = {f};
  sig.ctor_funcs = {f};  // constrained but with no base case
  Variable hole{"x", "s", 1};
  InstanceReport report = check_cb_instance(make_sig(sig), {}, hole, falsity(), 1, Flavor::Plain,
                                            bounds_of({{"s", 1}}));
  REQUIRE(report.premises.empty());
  REQUIRE(report.all_hold);
}

TEST_CASE("check_fn_instance enumerates cardinality caps") {
  Signature sig;
  sig.sorts = {"s"};
  sig.finite_sorts = {"s"};
  SigPtr sp = make_sig(sig);
  SECTION("a goal entailed outright holds under every cap") {
    InstanceReport report =
        check_fn_instance(sp, {}, truth(), {{"s", 2}}, Flavor::Plain, bounds_of({{"s", 2}}));
    REQUIRE(report.premises.size() == 3);
    REQUIRE(report.all_hold);
  }
  SECTION("contradictory premises make every instance hold") {
    std::vector<Sentence> phi = {snot(gamma_sentence("s", 1))};
    InstanceReport report =
        check_fn_instance(sp, phi, falsity(), {{"s", 1}}, Flavor::Plain, bounds_of({{"s", 2}}));
    REQUIRE(report.premises.size() == 2);
    REQUIRE(report.all_hold);
  }
}

TEST_CASE("check_derivation validates the rule schemas") {
  SigPtr sig = list_sig();
  Sentence a = truth(), b = falsity();
  SECTION("monotonicity needs the subset relation") {
    Derivation d;
    DerivNode node;
    node.rule = DerivNode::Monotonicity;
    node.conclusion = Judgment{sig, {a, b}, {a}};
    d.nodes.push_back(node);
    REQUIRE(check_derivation(d).violations.empty());
    d.nodes[0].conclusion.rhs = {snot(a)};
    REQUIRE_FALSE(check_derivation(d).violations.empty());
  }
  SECTION("transitivity chains two judgments") {
    Derivation d;
    DerivNode n0;
    n0.rule = DerivNode::Monotonicity;
    n0.conclusion = Judgment{sig, {a, b}, {a}};
    DerivNode n1;
    n1.rule = DerivNode::Monotonicity;
    n1.conclusion = Judgment{sig, {a}, {a}};
    DerivNode n2;
    n2.rule = DerivNode::Transitivity;
    n2.premises = {0, 1};
    n2.conclusion = Judgment{sig, {a, b}, {a}};
    d.nodes = {n0, n1, n2};
    REQUIRE(check_derivation(d).violations.empty());
    d.nodes[2].conclusion.rhs = {b};
    REQUIRE_FALSE(check_derivation(d).violations.empty());
  }
  SECTION("union collects singleton premises") {
    Derivation d;
    DerivNode n0;
    n0.rule = DerivNode::Monotonicity;
    n0.conclusion = Judgment{sig, {a, b}, {a}};
    DerivNode n1;
    n1.rule = DerivNode::Monotonicity;
    n1.conclusion = Judgment{sig, {a, b}, {b}};
    DerivNode n2;
    n2.rule = DerivNode::Union;
    n2.premises = {0, 1};
    n2.conclusion = Judgment{sig, {a, b}, {a, b}};
    d.nodes = {n0, n1, n2};
    REQUIRE(check_derivation(d).violations.empty());
  }
  SECTION("translation needs a valid morphism") {
    Derivation d;
    DerivNode n0;
    n0.rule = DerivNode::Monotonicity;
    n0.conclusion = Judgment{sig, {a}, {a}};
    DerivNode n1;
    n1.rule = DerivNode::Translation;
    n1.premises = {0};
    SignatureMorphism broken = identity_morphism(sig);
    broken.sort_map.erase("Elt");
    n1.morphism = broken;
    n1.conclusion = Judgment{sig, {a}, {a}};
    d.nodes = {n0, n1};
    REQUIRE_FALSE(check_derivation(d).violations.empty());
  }
  SECTION("cb nodes carry bounded instance tables") {
    Derivation d;
    DerivNode node;
    node.rule = DerivNode::CbBounded;
    Variable x{"x", "List", 0};
    node.conclusion = Judgment{sig, {}, {forall({x}, eq(tvar(x), tvar(x)))}};
    node.cb_depth = 2;
    node.bounds = bounds_of({{"Elt", 1}, {"List", 2}});
    d.nodes.push_back(node);
    DerivationReport report = check_derivation(d);
    REQUIRE(report.violations.empty());
    REQUIRE(report.bounded_nodes == std::vector<int>{0});
    REQUIRE(report.instance_tables.size() == 1);
  }
}
