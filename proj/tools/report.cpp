#include "report.hpp"

#include <iomanip>

namespace qbrst::cli {

bool Report::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::settle() {
  if (status == "pass" || status == "fail") status = all_passed() ? "pass" : "fail";
}

int Report::exit_code() const {
  if (status == "pass") return 0;
  if (status == "input-error") return 2;
  return 1;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = status;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    if (c.criterion > 0) e["criterion"] = c.criterion;
    e["ms"] = c.ms;
    j["checks"].push_back(std::move(e));
  }
  j["results"] = results;
  j["error"] = error;
  j["timing_ms"] = timing_ms;
  j["version"] = kVersion;
  return j;
}

namespace {

void print_value(std::ostream& out, const nlohmann::ordered_json& v, const std::string& indent) {
  if (v.is_string()) {
    out << v.get<std::string>() << "\n";
  } else if (v.is_array()) {
    out << "\n";
    for (const auto& e : v) {
      out << indent << "  - ";
      if (e.is_string()) {
        out << e.get<std::string>() << "\n";
      } else {
        out << e.dump() << "\n";
      }
    }
  } else if (v.is_object()) {
    out << "\n";
    for (const auto& [k, e] : v.items()) {
      out << indent << "  " << k << ": ";
      print_value(out, e, indent + "  ");
    }
  } else {
    out << v.dump() << "\n";
  }
}

}  // namespace

void Report::print_text(std::ostream& out) const {
  out << "command: " << command << "\n";
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  for (const auto& [k, v] : results.items()) {
    out << k << ": ";
    print_value(out, v, "");
  }
  if (!error.empty()) out << "error: " << error << "\n";
  out << "status: " << status << "\n";
  out << "time: " << std::fixed << std::setprecision(1) << timing_ms << " ms\n";
  out << "engine: qbrst " << kVersion << "\n";
}

}  // namespace qbrst::cli
