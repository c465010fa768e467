// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ta {

/// Line-oriented key/value report with a stable schema version. The machine
/// rendering is the canonical one; a short human summary is derived from it
/// and emitted as comment lines, so the two always agree on the verdict.
class Report {
public:
  explicit Report(const std::string& verb) {
    set("report.version", "1");
    set("verb", verb);
  }

  void set(const std::string& key, const std::string& value) { lines_.push_back({key, value}); }
  void set(const std::string& key, long long value) { set(key, std::to_string(value)); }
  void set_bool(const std::string& key, bool value) { set(key, value ? "true" : "false"); }

  void verdict(const std::string& v) {
    verdict_ = v;
    set("verdict", v);
  }
  const std::string& verdict() const { return verdict_; }

  void note(const std::string& text) { notes_.push_back(text); }

  void render(std::ostream& os) const {
    for (const auto& n : notes_) os << "# " << n << "\n";
    if (!verdict_.empty()) os << "# verdict: " << verdict_ << "\n";
    for (const auto& [k, v] : lines_) os << "ta." << k << ": " << v << "\n";
  }

private:
  std::vector<std::pair<std::string, std::string>> lines_;
  std::vector<std::string> notes_;
  std::string verdict_;
};

}  // namespace ta
