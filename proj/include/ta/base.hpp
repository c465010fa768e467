// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ta {

/// Value-semantic heap box for recursive variants. Deep-copies on copy.
template <typename T>
class Box {
public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SortError : Error { using Error::Error; };
struct UnboundVariable : Error { using Error::Error; };
struct AmbiguousSymbol : Error { using Error::Error; };
struct ResolveError : Error { using Error::Error; };
struct ResourceLimit : Error { using Error::Error; };
struct NotComparable : Error { using Error::Error; };
struct MissingCtors : Error { using Error::Error; };
struct UnknownFixture : Error { using Error::Error; };
struct DirectednessFailure : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Half-open source range, 1-based lines and columns.
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  bool valid() const { return line > 0; }
  std::string str() const {
    if (!valid()) return file.empty() ? std::string("<unknown>") : file;
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError : Error {
  ParseError(SourceSpan where, const std::string& message)
      : Error(where.str() + ": " + message), span(std::move(where)) {}
  SourceSpan span;
};

struct Violation {
  std::string location;  // dotted path into the offending value, or a span
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Collects invariant violations; empty means "all checks passed".
class ValidationReport {
public:
  void add(std::string location, std::string message) {
    items_.push_back({std::move(location), std::move(message)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.items_)
      items_.push_back({prefix.empty() ? v.location : prefix + "." + v.location, v.message});
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<Violation>& items() const { return items_; }

  std::string str() const {
    std::string out;
    for (const auto& v : items_) {
      out += v.location;
      out += ": ";
      out += v.message;
      out += '\n';
    }
    return out;
  }

private:
  std::vector<Violation> items_;
};

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64): identical streams on every platform.
// ---------------------------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n); n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  /// Uniform value in [lo, hi] inclusive.
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  bool chance(int percent) { return below(100) < percent; }

private:
  std::uint64_t state_;
};

}  // namespace ta
