// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "ta/ast.hpp"
#include "ta/fixtures.hpp"
#include "ta/fuzz.hpp"
#include "ta/signature.hpp"

using namespace ta;

namespace {

SigPtr list_sig() { return fixtures("list").signatures[0].sig; }

}  // namespace

TEST_CASE("check_signature accepts the LIST signature") {
  REQUIRE(check_signature(*list_sig()).empty());
}

TEST_CASE("check_signature flags an undeclared result sort") {
  Signature sig;
  sig.sorts = {"A"};
  sig.funcs = {FuncDecl{"f", {}, "B"}};
  auto report = check_signature(sig);
  REQUIRE(report.size() == 1);
}

TEST_CASE("check_signature flags constructors outside funcs") {
  Signature sig;
  sig.sorts = {"A"};
  sig.funcs = {FuncDecl{"f", {}, "A"}};
  sig.ctor_funcs = {FuncDecl{"g", {}, "A"}};
  auto report = check_signature(sig);
  REQUIRE(report.size() == 1);
}

TEST_CASE("check_signature rejects duplicate ranks but allows overloading") {
  Signature sig;
  sig.sorts = {"A", "B"};
  sig.funcs = {FuncDecl{"f", {}, "A"}, FuncDecl{"f", {}, "B"}};
  REQUIRE(check_signature(sig).empty());
  sig.funcs.push_back(FuncDecl{"f", {}, "A"});
  REQUIRE(check_signature(sig).size() == 1);
}

TEST_CASE("sort_of_term computes the sort of add(empty, empty)") {
  auto sig = list_sig();
  Term t = tapp(sig->funcs[2], {tapp(sig->funcs[0]), tapp(sig->funcs[0])});
  REQUIRE(sort_of_term(*sig, {}, t) == "List");
  REQUIRE(is_ground(t));
}

TEST_CASE("sort_of_term resolves variables through the context") {
  auto sig = list_sig();
  Variable x{"x", "Elt", 0};
  REQUIRE(sort_of_term(*sig, {x}, tvar(x)) == "Elt");
  REQUIRE_THROWS_AS(sort_of_term(*sig, {}, tvar(x)), UnboundVariable);
}

TEST_CASE("sort_of_term rejects an argument sort mismatch") {
  auto sig = list_sig();
  // cons expects (List, Elt); feed it (List, List)
  Term bad = tapp(sig->funcs[1], {tapp(sig->funcs[0]), tapp(sig->funcs[0])});
  REQUIRE_THROWS_AS(sort_of_term(*sig, {}, bad), SortError);
}

TEST_CASE("check_sentence accepts the add unit axiom") {
  SpecFile list = fixtures("list");
  for (const auto& s : list.presentations[0].sentences)
    REQUIRE(check_sentence(*list.signatures[0].sig, s).empty());
}

TEST_CASE("check_sentence flags equations across different sorts") {
  auto sig = list_sig();
  Variable e{"e", "Elt", 0};
  Sentence bad = exists({e}, eq(tapp(sig->funcs[0]), tvar(e)));
  REQUIRE_FALSE(check_sentence(*sig, bad).empty());
}

TEST_CASE("check_sentence flags a duplicate-name block") {
  auto sig = list_sig();
  VarBlock block = {Variable{"x", "Elt", 0}, Variable{"x", "List", 0}};
  Sentence bad = exists(block, truth());
  REQUIRE_FALSE(check_sentence(*sig, bad).empty());
}

TEST_CASE("sugar normalizes into the five core constructors") {
  auto sig = list_sig();
  Sentence t = truth();
  REQUIRE(std::holds_alternative<SenNot>(t.node));
  Sentence f = falsity();
  REQUIRE(std::holds_alternative<SenOr>(f.node));
  Variable x{"x", "List", 0};
  Sentence fa = forall({x}, eq(tvar(x), tvar(x)));
  REQUIRE(std::holds_alternative<SenNot>(fa.node));
  const auto& inner = std::get<SenNot>(fa.node);
  REQUIRE(std::holds_alternative<SenExists>(inner.body->node));
}

TEST_CASE("normalize is a fixpoint on random sentences") {
  Rng rng(2026);
  auto sig = list_sig();
  for (int i = 0; i < 200; ++i) {
    int counter = 0;
    Sentence s = fuzz::random_sentence(*sig, rng, 4, {}, counter);
    Sentence once = normalize(s);
    REQUIRE(normalize(once) == once);
    REQUIRE(once == s);  // the core AST never holds sugar
  }
}

TEST_CASE("extending a signature with fresh constants preserves well-formedness") {
  Rng rng(77);
  auto sig = list_sig();
  for (int i = 0; i < 100; ++i) {
    int counter = 0;
    Sentence s = fuzz::random_sentence(*sig, rng, 3, {}, counter);
    if (!well_formed(*sig, s)) continue;
    Signature bigger = extend_with_constants(*sig, {{"fresh0", "List"}, {"fresh1", "Elt"}});
    REQUIRE(well_formed(bigger, s));
  }
}

TEST_CASE("variable identity is the full triple") {
  Variable a{"x", "List", 0}, b{"x", "List", 1}, c{"x", "Elt", 0};
  REQUIRE(a == a);
  REQUIRE_FALSE(a == b);
  REQUIRE_FALSE(a == c);
  int q1 = next_qualifier(), q2 = next_qualifier();
  REQUIRE(q1 != q2);
}

TEST_CASE("valid_block enforces the block condition") {
  REQUIRE(valid_block({Variable{"x", "A", 0}, Variable{"y", "A", 0}}));
  REQUIRE(valid_block({Variable{"x", "A", 0}, Variable{"x", "A", 1}}));
  REQUIRE_FALSE(valid_block({Variable{"x", "A", 0}, Variable{"x", "B", 0}}));
}
