#pragma once

// Command report: checks, rendered results, timing. Text and JSON forms
// share one structure, so every command emits the same top-level keys.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qbrst::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Check {
  std::string name;
  bool passed = true;
  /// Residual, witness or summary; empty when there is nothing to add.
  std::string detail;
  /// Acceptance criterion the check belongs to; 0 when it belongs to none.
  int criterion = 0;
  double ms = 0;
};

struct Report {
  std::string command;
  /// "pass", "fail", "step-limit" or "input-error".
  std::string status = "pass";
  std::vector<Check> checks;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::string error;
  double timing_ms = 0;

  bool all_passed() const;
  /// Sets status from the checks unless an error status is already set.
  void settle();
  int exit_code() const;
  nlohmann::ordered_json to_json() const;
  void print_text(std::ostream& out) const;
};

}  // namespace qbrst::cli
