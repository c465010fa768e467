// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ta/base.hpp"

namespace ta {

/// A ranked function symbol. Symbols are identified by the whole triple, so a
/// name may be overloaded across distinct ranks.
struct FuncDecl {
  std::string name;
  std::vector<std::string> arity;  // argument sorts, left to right
  std::string result;

  bool is_constant() const { return arity.empty(); }
  std::string rank_str() const {
    std::string s = name + " :";
    for (const auto& a : arity) s += " " + a;
    s += " -> " + result;
    return s;
  }
  friend auto operator<=>(const FuncDecl&, const FuncDecl&) = default;
};

/// Many-sorted vocabulary: sorts, ranked function symbols, and polymorphic
/// transition labels, with optional constructor and finite-sort refinements.
struct Signature {
  std::vector<std::string> sorts;         // declaration order, no duplicates
  std::vector<FuncDecl> funcs;
  std::vector<std::string> labels;
  std::vector<FuncDecl> ctor_funcs;       // subset of funcs
  std::vector<std::string> finite_sorts;  // subset of sorts

  bool has_sort(const std::string& s) const {
    return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
  }
  bool has_label(const std::string& l) const {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  }
  bool has_func(const FuncDecl& f) const {
    return std::find(funcs.begin(), funcs.end(), f) != funcs.end();
  }
  bool is_ctor(const FuncDecl& f) const {
    return std::find(ctor_funcs.begin(), ctor_funcs.end(), f) != ctor_funcs.end();
  }
  bool is_finite_sort(const std::string& s) const {
    return std::find(finite_sorts.begin(), finite_sorts.end(), s) != finite_sorts.end();
  }

  std::vector<const FuncDecl*> funcs_named(const std::string& name) const {
    std::vector<const FuncDecl*> out;
    for (const auto& f : funcs)
      if (f.name == name) out.push_back(&f);
    return out;
  }

  /// All declared symbols with the given name and argument sorts. More than
  /// one hit means the name is overloaded on result sort alone.
  std::vector<const FuncDecl*> resolve(const std::string& name,
                                       const std::vector<std::string>& arg_sorts) const {
    std::vector<const FuncDecl*> out;
    for (const auto& f : funcs)
      if (f.name == name && f.arity == arg_sorts) out.push_back(&f);
    return out;
  }

  std::vector<FuncDecl> constants_of(const std::string& sort) const {
    std::vector<FuncDecl> out;
    for (const auto& f : funcs)
      if (f.is_constant() && f.result == sort) out.push_back(f);
    return out;
  }

  /// Constrained sorts are those with a constructor of that result sort; the
  /// rest are loose.
  std::vector<std::string> constrained_sorts() const {
    std::vector<std::string> out;
    for (const auto& s : sorts) {
      for (const auto& c : ctor_funcs)
        if (c.result == s) {
          out.push_back(s);
          break;
        }
    }
    return out;
  }
  std::vector<std::string> loose_sorts() const {
    std::vector<std::string> out;
    auto constrained = constrained_sorts();
    for (const auto& s : sorts)
      if (std::find(constrained.begin(), constrained.end(), s) == constrained.end())
        out.push_back(s);
    return out;
  }

  /// Componentwise subset test; used for the inclusion chains of forcing.
  bool includes(const Signature& sub) const {
    auto all_in = [](const auto& xs, auto pred) {
      return std::all_of(xs.begin(), xs.end(), pred);
    };
    return all_in(sub.sorts, [&](const std::string& s) { return has_sort(s); }) &&
           all_in(sub.funcs, [&](const FuncDecl& f) { return has_func(f); }) &&
           all_in(sub.labels, [&](const std::string& l) { return has_label(l); }) &&
           all_in(sub.ctor_funcs, [&](const FuncDecl& f) { return is_ctor(f); }) &&
           all_in(sub.finite_sorts, [&](const std::string& s) { return is_finite_sort(s); });
  }

  /// Number of symbols present here but not in `sub`; the signature part of
  /// the forcing distance.
  int symbols_beyond(const Signature& sub) const {
    int n = 0;
    for (const auto& s : sorts)
      if (!sub.has_sort(s)) ++n;
    for (const auto& f : funcs)
      if (!sub.has_func(f)) ++n;
    for (const auto& l : labels)
      if (!sub.has_label(l)) ++n;
    return n;
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

using SigPtr = std::shared_ptr<const Signature>;

inline SigPtr make_sig(Signature s) { return std::make_shared<const Signature>(std::move(s)); }

/// Signature extension with fresh constants (the paper's Sigma[X]).
inline Signature extend_with_constants(const Signature& sig,
                                       const std::vector<std::pair<std::string, std::string>>& consts) {
  Signature out = sig;
  for (const auto& [name, sort] : consts) out.funcs.push_back(FuncDecl{name, {}, sort});
  return out;
}

inline ValidationReport check_signature(const Signature& sig) {
  ValidationReport report;
  std::set<std::string> seen_sorts;
  for (const auto& s : sig.sorts) {
    if (!seen_sorts.insert(s).second) report.add("sorts." + s, "duplicate sort declaration");
  }
  std::set<std::string> seen_labels;
  for (const auto& l : sig.labels) {
    if (!seen_labels.insert(l).second) report.add("labels." + l, "duplicate label declaration");
  }
  std::set<FuncDecl> seen_funcs;
  for (const auto& f : sig.funcs) {
    if (!seen_funcs.insert(f).second)
      report.add("funcs." + f.name, "duplicate rank: " + f.rank_str());
    for (const auto& a : f.arity)
      if (!sig.has_sort(a))
        report.add("funcs." + f.name, "undeclared arity sort '" + a + "' in " + f.rank_str());
    if (!sig.has_sort(f.result))
      report.add("funcs." + f.name, "undeclared result sort '" + f.result + "' in " + f.rank_str());
  }
  for (const auto& c : sig.ctor_funcs)
    if (!sig.has_func(c))
      report.add("ctor_funcs." + c.name, "constructor not among funcs: " + c.rank_str());
  for (const auto& s : sig.finite_sorts)
    if (!sig.has_sort(s)) report.add("finite_sorts." + s, "finite marking on undeclared sort");
  return report;
}

}  // namespace ta
