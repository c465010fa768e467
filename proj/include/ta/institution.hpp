// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ta/ast.hpp"
#include "ta/model.hpp"
#include "ta/signature.hpp"

namespace ta {

enum class MorphismFlavor { Plain, Ctor, Finite };

/// A structure-preserving map of vocabularies: sorts to sorts, function
/// symbols to rank-compatible function symbols, labels to labels.
struct SignatureMorphism {
  SigPtr source, target;
  std::map<std::string, std::string> sort_map;
  std::map<FuncDecl, FuncDecl> func_map;
  std::map<std::string, std::string> label_map;

  const std::string& on_sort(const std::string& s) const { return sort_map.at(s); }
  const FuncDecl& on_func(const FuncDecl& f) const { return func_map.at(f); }
  const std::string& on_label(const std::string& l) const { return label_map.at(l); }

  friend bool operator==(const SignatureMorphism& a, const SignatureMorphism& b) {
    return *a.source == *b.source && *a.target == *b.target && a.sort_map == b.sort_map &&
           a.func_map == b.func_map && a.label_map == b.label_map;
  }
};

inline SignatureMorphism identity_morphism(const SigPtr& sig) {
  SignatureMorphism chi;
  chi.source = chi.target = sig;
  for (const auto& s : sig->sorts) chi.sort_map[s] = s;
  for (const auto& f : sig->funcs) chi.func_map[f] = f;
  for (const auto& l : sig->labels) chi.label_map[l] = l;
  return chi;
}

inline ValidationReport check_morphism(const SignatureMorphism& chi,
                                       MorphismFlavor flavor = MorphismFlavor::Plain) {
  ValidationReport report;
  for (const auto& s : chi.source->sorts) {
    auto it = chi.sort_map.find(s);
    if (it == chi.sort_map.end()) {
      report.add("sort." + s, "sort has no image");
    } else if (!chi.target->has_sort(it->second)) {
      report.add("sort." + s, "image sort '" + it->second + "' not declared in target");
    }
  }
  for (const auto& f : chi.source->funcs) {
    auto it = chi.func_map.find(f);
    if (it == chi.func_map.end()) {
      report.add("op." + f.name, "function symbol has no image: " + f.rank_str());
      continue;
    }
    const FuncDecl& g = it->second;
    if (!chi.target->has_func(g)) {
      report.add("op." + f.name, "image symbol not declared in target: " + g.rank_str());
      continue;
    }
    bool rank_ok = g.arity.size() == f.arity.size();
    if (rank_ok)
      for (std::size_t i = 0; i < f.arity.size(); ++i)
        if (chi.sort_map.count(f.arity[i]) == 0 || g.arity[i] != chi.sort_map.at(f.arity[i]))
          rank_ok = false;
    if (rank_ok && (chi.sort_map.count(f.result) == 0 || g.result != chi.sort_map.at(f.result)))
      rank_ok = false;
    if (!rank_ok)
      report.add("op." + f.name,
                 "image rank does not follow the sort map: " + f.rank_str() + " -> " + g.rank_str());
  }
  for (const auto& l : chi.source->labels) {
    auto it = chi.label_map.find(l);
    if (it == chi.label_map.end())
      report.add("label." + l, "label has no image");
    else if (!chi.target->has_label(it->second))
      report.add("label." + l, "image label '" + it->second + "' not declared in target");
  }

  if (flavor == MorphismFlavor::Ctor || flavor == MorphismFlavor::Finite) {
    // constructors are preserved
    for (const auto& c : chi.source->ctor_funcs) {
      auto it = chi.func_map.find(c);
      if (it != chi.func_map.end() && !chi.target->is_ctor(it->second))
        report.add("ctor." + c.name, "constructor not preserved: image " + it->second.rank_str() +
                                         " is not a target constructor");
    }
    // constructors are reflected: every target constructor with result chi(s)
    // is the image of a source constructor with result s
    for (const auto& s : chi.source->sorts) {
      if (!chi.sort_map.count(s)) continue;
      const std::string& s2 = chi.sort_map.at(s);
      for (const auto& c2 : chi.target->ctor_funcs) {
        if (c2.result != s2) continue;
        bool reflected = false;
        for (const auto& c : chi.source->ctor_funcs) {
          auto it = chi.func_map.find(c);
          if (c.result == s && it != chi.func_map.end() && it->second == c2) {
            reflected = true;
            break;
          }
        }
        if (!reflected)
          report.add("ctor." + c2.name, "constructor not reflected: " + c2.rank_str() +
                                            " has no preimage with result sort " + s);
      }
    }
  }
  if (flavor == MorphismFlavor::Finite) {
    for (const auto& s : chi.source->finite_sorts) {
      auto it = chi.sort_map.find(s);
      if (it != chi.sort_map.end() && !chi.target->is_finite_sort(it->second))
        report.add("finite." + s, "finite sort not preserved: image '" + it->second +
                                      "' is not marked finite in target");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Translation along a morphism
// ---------------------------------------------------------------------------

inline Term translate_term(const SignatureMorphism& chi, const Term& t) {
  if (t.is_var()) {
    Variable v = t.var();
    v.sort = chi.on_sort(v.sort);
    return tvar(std::move(v));
  }
  const auto& app = t.app();
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(translate_term(chi, a));
  return tapp(chi.on_func(app.fn), std::move(args));
}

inline Action translate_action(const SignatureMorphism& chi, const Action& a) {
  if (const auto* l = std::get_if<ActLabel>(&a.node)) return alabel(chi.on_label(l->label));
  if (const auto* s = std::get_if<ActSeq>(&a.node))
    return aseq(translate_action(chi, *s->lhs), translate_action(chi, *s->rhs));
  if (const auto* u = std::get_if<ActUnion>(&a.node))
    return aunion(translate_action(chi, *u->lhs), translate_action(chi, *u->rhs));
  return astar(translate_action(chi, *std::get<ActStar>(a.node).body));
}

/// Homomorphic sentence translation; the quantifier case rebuilds the block
/// as X' = { (v, chi(s)) | (v, s) in X } and recurses.
inline Sentence translate_sentence(const SignatureMorphism& chi, const Sentence& s) {
  if (const auto* e = std::get_if<SenEq>(&s.node))
    return eq(translate_term(chi, e->lhs), translate_term(chi, e->rhs));
  if (const auto* t = std::get_if<SenTrans>(&s.node))
    return trans(translate_action(chi, t->act), translate_term(chi, t->lhs),
                 translate_term(chi, t->rhs));
  if (const auto* n = std::get_if<SenNot>(&s.node)) return snot(translate_sentence(chi, *n->body));
  if (const auto* o = std::get_if<SenOr>(&s.node)) {
    std::vector<Sentence> items;
    items.reserve(o->items.size());
    for (const auto& i : o->items) items.push_back(translate_sentence(chi, i));
    return sor(std::move(items));
  }
  const auto& ex = std::get<SenExists>(s.node);
  VarBlock block;
  block.reserve(ex.block.size());
  for (const auto& v : ex.block) block.push_back(Variable{v.name, chi.on_sort(v.sort), v.qualifier});
  return exists(std::move(block), translate_sentence(chi, *ex.body));
}

/// Model reduct along a morphism: carrier(s) = carrier'(chi(s)), each symbol
/// interpreted by its image's interpretation.
inline FiniteModel reduct_model(const SignatureMorphism& chi, const FiniteModel& m2) {
  FiniteModel out;
  out.sig = chi.source;
  for (const auto& s : chi.source->sorts) out.carriers[s] = m2.carriers.at(chi.on_sort(s));
  for (const auto& f : chi.source->funcs) {
    const FuncDecl& g = chi.on_func(f);
    auto it = m2.tables.find(g);
    out.tables[f] = it == m2.tables.end() ? std::vector<int>{} : it->second;
  }
  for (const auto& l : chi.source->labels)
    for (const auto& s : chi.source->sorts) {
      auto it = m2.rels.find({chi.on_label(l), chi.on_sort(s)});
      if (it != m2.rels.end() && !it->second.empty()) out.rels[{l, s}] = it->second;
    }
  return out;
}

/// Eager composition: flat maps, so functoriality is a structural equality.
inline SignatureMorphism compose(const SignatureMorphism& first, const SignatureMorphism& second) {
  SignatureMorphism out;
  out.source = first.source;
  out.target = second.target;
  for (const auto& [s, img] : first.sort_map) out.sort_map[s] = second.on_sort(img);
  for (const auto& [f, img] : first.func_map) out.func_map[f] = second.on_func(img);
  for (const auto& [l, img] : first.label_map) out.label_map[l] = second.on_label(img);
  return out;
}

// ---------------------------------------------------------------------------
// Substitutions: maps from fresh constants C1 to ground terms over Sigma[C2]
// ---------------------------------------------------------------------------

struct Substitution {
  SigPtr base;                                       // Sigma
  std::vector<std::pair<std::string, std::string>> c1, c2;  // fresh constants (name, sort)
  std::map<std::string, Term> map;                   // c in C1 -> ground term over Sigma[C2]

  Signature source_sig() const { return extend_with_constants(*base, c1); }
  Signature target_sig() const { return extend_with_constants(*base, c2); }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return *a.base == *b.base && a.c1 == b.c1 && a.c2 == b.c2 && a.map == b.map;
  }
};

inline ValidationReport check_substitution(const Substitution& theta) {
  ValidationReport report;
  Signature target = theta.target_sig();
  for (const auto& [name, sort] : theta.c1) {
    auto it = theta.map.find(name);
    if (it == theta.map.end()) {
      report.add("subst." + name, "constant has no image term");
      continue;
    }
    if (!is_ground(it->second)) {
      report.add("subst." + name, "image term is not ground");
      continue;
    }
    try {
      std::string got = sort_of_term(target, {}, it->second);
      if (got != sort)
        report.add("subst." + name, "image term has sort " + got + ", expected " + sort);
    } catch (const Error& e) {
      report.add("subst." + name, e.what());
    }
  }
  return report;
}

inline Term apply_substitution(const Substitution& theta, const Term& t) {
  Term out = t;
  for (const auto& [name, sort] : theta.c1)
    out = subst_const(out, FuncDecl{name, {}, sort}, theta.map.at(name));
  return out;
}

/// The sentence functor of a substitution: every occurrence of c in C1 is
/// replaced by theta(c); base symbols and bound variables are untouched.
inline Sentence apply_substitution(const Substitution& theta, const Sentence& s) {
  Sentence out = s;
  for (const auto& [name, sort] : theta.c1)
    out = subst_const(out, FuncDecl{name, {}, sort}, theta.map.at(name));
  return out;
}

/// The reduct functor of a substitution: the Sigma part is copied and each
/// c in C1 is interpreted as the value of theta(c).
inline FiniteModel reduct_along_substitution(const Substitution& theta, const FiniteModel& m) {
  FiniteModel out;
  out.sig = make_sig(theta.source_sig());
  out.carriers = m.carriers;
  for (const auto& f : theta.base->funcs) out.tables[f] = m.tables.at(f);
  out.rels = m.rels;
  for (const auto& [name, sort] : theta.c1) {
    FuncDecl c{name, {}, sort};
    out.tables[c] = {eval_term(m, {}, theta.map.at(name))};
  }
  return out;
}

}  // namespace ta
