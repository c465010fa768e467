// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ta/ast.hpp"

namespace ta {

/// Congruence closure over ground terms: the least equivalence containing the
/// given equations that is closed under contexts. The term universe grows on
/// demand when queries mention new terms.
class CongruenceClosure {
public:
  explicit CongruenceClosure(long long budget = 1'000'000) : budget_(budget) {}

  /// Interns a ground term (and its subterms); returns its node id.
  int add_term(const Term& t) {
    if (t.is_var()) throw SortError("congruence closure is over ground terms only");
    const auto& app = t.app();
    std::vector<int> args;
    args.reserve(app.args.size());
    for (const auto& a : app.args) args.push_back(add_term(a));
    Key key{app.fn, args};
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    if (--budget_ < 0) throw ResourceLimit("congruence closure budget exceeded");
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{app.fn, args, t});
    parent_.push_back(id);
    interned_[key] = id;
    dirty_ = true;
    return id;
  }

  void add_equation(const Term& lhs, const Term& rhs) {
    pending_.push_back({add_term(lhs), add_term(rhs)});
    dirty_ = true;
  }

  bool query(const Term& lhs, const Term& rhs) {
    int a = add_term(lhs), b = add_term(rhs);
    close();
    return find(a) == find(b);
  }

  int class_of(const Term& t) {
    int id = add_term(t);
    close();
    return find(id);
  }

  /// Class representatives in a stable order (lowest interned id first).
  std::vector<int> representatives() {
    close();
    std::vector<int> reps;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
      if (find(i) == i) reps.push_back(i);
    return reps;
  }

  const Term& term_of(int id) const { return nodes_[static_cast<std::size_t>(id)].term; }

  std::size_t universe_size() const { return nodes_.size(); }

  void close() {
    if (!dirty_) return;
    for (const auto& [a, b] : pending_) merge(a, b);
    pending_.clear();
    // context closure: merge applications of the same symbol to congruent args
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
          if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
          if (nodes_[i].fn != nodes_[j].fn) continue;
          bool congruent = true;
          for (std::size_t k = 0; k < nodes_[i].args.size(); ++k)
            if (find(nodes_[i].args[k]) != find(nodes_[j].args[k])) {
              congruent = false;
              break;
            }
          if (congruent) {
            merge(static_cast<int>(i), static_cast<int>(j));
            changed = true;
          }
        }
    }
    dirty_ = false;
  }

private:
  struct Node {
    FuncDecl fn;
    std::vector<int> args;
    Term term;
  };
  using Key = std::pair<FuncDecl, std::vector<int>>;

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);  // lowest id represents the class
    parent_[b] = a;
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_;
  std::map<Key, int> interned_;
  std::vector<std::pair<int, int>> pending_;
  bool dirty_ = false;
  long long budget_;
};

}  // namespace ta
