// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sstream>
#include <string>

#include "ta/ast.hpp"

namespace ta {

inline std::string print_term(const Term& t) {
  if (t.is_var()) return t.var().name;
  const auto& app = t.app();
  if (app.args.empty()) return app.fn.name;
  std::string out = app.fn.name + "(";
  for (std::size_t i = 0; i < app.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(app.args[i]);
  }
  return out + ")";
}

namespace detail {

// precedence: union 0, seq 1, star/postfix 2
inline std::string print_action_prec(const Action& a, int min_prec) {
  std::string out;
  int prec;
  if (const auto* l = std::get_if<ActLabel>(&a.node)) {
    out = l->label;
    prec = 3;
  } else if (const auto* s = std::get_if<ActSeq>(&a.node)) {
    out = print_action_prec(*s->lhs, 1) + " ; " + print_action_prec(*s->rhs, 2);
    prec = 1;
  } else if (const auto* u = std::get_if<ActUnion>(&a.node)) {
    out = print_action_prec(*u->lhs, 0) + " | " + print_action_prec(*u->rhs, 1);
    prec = 0;
  } else {
    out = print_action_prec(*std::get<ActStar>(a.node).body, 3) + "*";
    prec = 2;
  }
  if (prec < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string print_action(const Action& a) { return detail::print_action_prec(a, 0); }

inline std::string print_block(const VarBlock& block) {
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ", ";
    out += block[i].name + ":" + block[i].sort;
  }
  return out;
}

/// Prints a sentence in the surface syntax. Emits `true`, `false` and
/// `forall` for their defining core patterns so that parse(print(s)) == s.
inline std::string print_sentence(const Sentence& s) {
  if (const auto* e = std::get_if<SenEq>(&s.node))
    return print_term(e->lhs) + " = " + print_term(e->rhs);
  if (const auto* t = std::get_if<SenTrans>(&s.node)) {
    std::string act = std::holds_alternative<ActLabel>(t->act.node)
                          ? print_action(t->act)
                          : "(" + print_action(t->act) + ")";
    return act + "(" + print_term(t->lhs) + ", " + print_term(t->rhs) + ")";
  }
  if (const auto* n = std::get_if<SenNot>(&s.node)) {
    // truth: not or{}
    if (const auto* o = std::get_if<SenOr>(&n->body->node); o && o->items.empty()) return "true";
    // forall X . phi: not exists X . not phi
    if (const auto* ex = std::get_if<SenExists>(&n->body->node))
      if (const auto* inner = std::get_if<SenNot>(&ex->body->node))
        return "forall " + print_block(ex->block) + " . " + print_sentence(*inner->body);
    return "not " + print_sentence(*n->body);
  }
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    if (o->items.empty()) return "false";
    std::string out = "or{ ";
    for (std::size_t i = 0; i < o->items.size(); ++i) {
      if (i) out += ", ";
      out += print_sentence(o->items[i]);
    }
    return out + " }";
  }
  const auto& ex = std::get<SenExists>(s.node);
  return "exists " + print_block(ex.block) + " . " + print_sentence(*ex.body);
}

}  // namespace ta
