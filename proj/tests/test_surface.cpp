// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "ta/fixtures.hpp"
#include "ta/fuzz.hpp"
#include "ta/surface.hpp"

using namespace ta;

TEST_CASE("parse_spec reads the LIST signature with ctor markers") {
  std::string text = R"(
signature LIST {
  sorts Elt List
  ops
    empty : -> List [ctor]
    cons : List Elt -> List [ctor]
    add : List List -> List
}
)";
  SpecFile spec = parse_spec(text, "list.ta");
  REQUIRE(spec.signatures.size() == 1);
  const Signature& sig = *spec.signatures[0].sig;
  REQUIRE(sig.sorts == std::vector<std::string>{"Elt", "List"});
  REQUIRE(sig.funcs.size() == 3);
  REQUIRE(sig.ctor_funcs.size() == 2);
  REQUIRE(sig.is_ctor(FuncDecl{"empty", {}, "List"}));
  REQUIRE_FALSE(sig.is_ctor(FuncDecl{"add", {"List", "List"}, "List"}));
}

TEST_CASE("parse_spec yields an empty SpecFile on empty input") {
  SpecFile spec = parse_spec("", "empty.ta");
  REQUIRE(spec == SpecFile{});
}

TEST_CASE("forall is definitional sugar") {
  std::string text = R"(
signature LIST {
  sorts Elt List
  ops
    empty : -> List [ctor]
    cons : List Elt -> List [ctor]
    add : List List -> List
}
presentation P : LIST {
  forall x:List . add(x, empty) = x
}
)";
  SpecFile spec = parse_spec(text, "p.ta");
  const Sentence& s = spec.presentations[0].sentences[0];
  const auto* n = std::get_if<SenNot>(&s.node);
  REQUIRE(n != nullptr);
  const auto* ex = std::get_if<SenExists>(&n->body->node);
  REQUIRE(ex != nullptr);
  REQUIRE(ex->block == VarBlock{Variable{"x", "List", 0}});
  REQUIRE(std::holds_alternative<SenNot>(ex->body->node));
}

TEST_CASE("zero powers parse as equations") {
  std::string text = R"(
signature S {
  sorts s
  ops
    c : -> s
    d : -> s
  labels l
}
presentation P : S {
  l^0(c, d)
  l^2(c, d)
}
)";
  SpecFile spec = parse_spec(text, "pow.ta");
  const auto& ss = spec.presentations[0].sentences;
  REQUIRE(std::holds_alternative<SenEq>(ss[0].node));
  const auto* t = std::get_if<SenTrans>(&ss[1].node);
  REQUIRE(t != nullptr);
  REQUIRE(std::holds_alternative<ActSeq>(t->act.node));
}

TEST_CASE("parse errors carry file, line and column") {
  try {
    parse_spec("signature S {\n  sorts\n  ops oops\n}", "bad.ta");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(std::string(e.what()).find("bad.ta:") == 0);
    REQUIRE(e.span.line >= 3);
  }
}

TEST_CASE("dangling references are resolve errors with spans") {
  REQUIRE_THROWS_AS(parse_spec("model M : NOPE { }", "x.ta"), ParseError);
}

TEST_CASE("round-trip: parse after print is the identity on all fixtures") {
  for (const auto& name : fixture_names()) {
    SpecFile spec = fixtures(name);
    std::string text = print_spec(spec);
    INFO("fixture " << name << ":\n" << text);
    SpecFile again = parse_spec(text, name + ".ta");
    REQUIRE(again == spec);
  }
}

TEST_CASE("action precedence survives a round-trip") {
  std::string text = R"(
signature S {
  sorts s
  ops
    c : -> s
  labels a b d
}
presentation P : S {
  ((a ; b | d))*(c, c)
  (a ; (b | d))(c, c)
  (a ; b ; d)(c, c)
}
)";
  SpecFile spec = parse_spec(text, "act.ta");
  SpecFile again = parse_spec(print_spec(spec), "act2.ta");
  REQUIRE(again == spec);
  // (a ; b | d)* groups as ((a;b) | d)*
  const auto* t = std::get_if<SenTrans>(&spec.presentations[0].sentences[0].node);
  REQUIRE(t != nullptr);
  const auto* star = std::get_if<ActStar>(&t->act.node);
  REQUIRE(star != nullptr);
  REQUIRE(std::holds_alternative<ActUnion>(star->body->node));
}

TEST_CASE("a forcing scenario with three conditions round-trips") {
  SpecFile spec = fixtures("forcing-chain");
  REQUIRE(spec.forcings.size() == 1);
  REQUIRE(spec.forcings[0].property.size() == 3);
  SpecFile again = parse_spec(print_spec(spec), "f.ta");
  REQUIRE(again == spec);
  REQUIRE(again.forcings[0].property.least == 0);
}

TEST_CASE("parser is total on fuzzed inputs") {
  Rng rng(99);
  std::string seedtext = print_spec(fixtures("list-saturated"));
  for (int round = 0; round < 300; ++round) {
    std::string text = seedtext;
    int edits = 1 + rng.below(6);
    for (int e = 0; e < edits; ++e) {
      std::size_t at = static_cast<std::size_t>(rng.below(static_cast<int>(text.size())));
      char c = static_cast<char>(32 + rng.below(95));
      if (rng.chance(50)) text[at] = c;
      else text.insert(at, 1, c);
    }
    try {
      parse_spec(text, "fuzz.ta");
    } catch (const ParseError&) {
    } catch (const AmbiguousSymbol&) {
    }
    // anything else (crash, uncaught exception) fails the test
  }
  SUCCEED();
}

TEST_CASE("random sentences over the LIST signature round-trip through print") {
  Rng rng(4207);
  SpecFile list = fixtures("list");
  SigPtr sig = list.signatures[0].sig;
  int kept = 0;
  for (int i = 0; i < 300; ++i) {
    int counter = 0;
    Sentence s = fuzz::random_sentence(*sig, rng, 4, {}, counter);
    if (!well_formed(*sig, s)) continue;
    std::string text = "presentation P : LIST {\n  " + print_sentence(s) + "\n}\n";
    SpecFile spec = parse_spec(print_spec(list) + text, "rt.ta");
    REQUIRE(spec.presentations.back().sentences[0] == s);
    ++kept;
  }
  REQUIRE(kept > 100);
}

TEST_CASE("morphism and substitution declarations parse and print") {
  std::string text = R"(
signature A {
  sorts s
  ops
    c : -> s
  labels l
}
signature B {
  sorts u
  ops
    k : -> u
    f : u -> u
  labels m
}
morphism h : A -> B {
  sort s -> u
  op c -> k
  label l -> m
}
subst th : {a1:s} -> {b1:s} over A {
  a1 -> c
}
)";
  SpecFile spec = parse_spec(text, "m.ta");
  REQUIRE(spec.morphisms.size() == 1);
  REQUIRE(spec.morphisms[0].morphism.on_sort("s") == "u");
  REQUIRE(spec.substitutions.size() == 1);
  REQUIRE(check_substitution(spec.substitutions[0].subst).empty());
  SpecFile again = parse_spec(print_spec(spec), "m2.ta");
  REQUIRE(again == spec);
}

TEST_CASE("overloading must be resolvable after sort inference") {
  std::string text = R"(
signature S {
  sorts A B
  ops
    c : -> A
    c : -> B
    f : A -> A
}
presentation P : S {
  f(c) = c
}
)";
  // f's argument pins the first c to sort A, but the right-hand c stays
  // ambiguous on result sort alone
  REQUIRE_THROWS_AS(parse_spec(text, "amb.ta"), AmbiguousSymbol);
  std::string ok = R"(
signature S {
  sorts A B
  ops
    c : -> A
    c : -> B
    f : A -> A
}
presentation P : S {
  f(c) = f(c)
}
)";
  SpecFile spec = parse_spec(ok, "ok.ta");
  REQUIRE(spec.presentations[0].sentences.size() == 1);
}

TEST_CASE("generated fixture families have the documented shape") {
  SpecFile uls = fixtures("uls", {.k = 4});
  REQUIRE(uls.signatures.size() == 1);
  REQUIRE(uls.models.size() == 1);
  REQUIRE(uls.presentations[0].sentences.size() == 4);
  SpecFile ex = fixtures("example28", {.k = 3});
  REQUIRE(ex.presentations[0].sentences.size() == 4);  // the star atom plus n < 3
  SpecFile inf = fixtures("inf", {.k = 2});
  REQUIRE(inf.presentations[0].sentences.size() == 2);
  REQUIRE(inf.types[0].type.sentences.size() == 2);
  REQUIRE_THROWS_AS(fixtures("no-such"), UnknownFixture);
}

TEST_CASE("queries and proofs parse and print") {
  std::string text = R"(
signature A {
  sorts s
  ops
    c : -> s
}
presentation P : A {
  c = c
}
presentation Q : A {
  c = c
  true
}
query q1 : entails { goal = P  bound = "s=2" }
proof pr over A {
  node n0 = monotonicity { from Q to P }
}
)";
  SpecFile spec = parse_spec(text, "q.ta");
  REQUIRE(spec.queries.size() == 1);
  REQUIRE(spec.queries[0].args.size() == 2);
  REQUIRE(spec.queries[0].args[1].second == "s=2");
  REQUIRE(spec.proofs.size() == 1);
  SpecFile again = parse_spec(print_spec(spec), "q2.ta");
  REQUIRE(again == spec);
}
