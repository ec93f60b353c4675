#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sskit/kolmo.hpp"
#include "sskit/rational.hpp"

namespace sskit {

using Json = nlohmann::ordered_json;

// One verified inequality: pass means lhs <= rhs + slack, recomputable from
// the recorded exact values.
struct CheckRecord {
  std::string name;
  std::string lhs;
  std::string rhs;
  std::string slack;
  bool pass = false;
  std::string note;

  Json toJson() const;
};

struct Report {
  std::string suite;
  Json config;  // semantic fields only; runtime knobs live under "runtime"
  std::vector<CheckRecord> checks;
  bool pass = false;
  std::string isaHash;
  long timingMs = 0;
  int jobs = 1;

  void addCheck(CheckRecord record);
  void finalize();  // pass = conjunction of the checks

  Json toJson(bool includeRuntime = true) const;
  std::string toJsonString(bool includeRuntime = true) const;
  // Byte-comparable form: identical configs and seeds must produce identical
  // strings for any worker count (runtime section stripped).
  std::string comparableString() const { return toJsonString(false); }
  void write(const std::string& path) const;
};

// Formatting helpers shared by every suite.
std::string fmt(const Rat& r);
std::string fmt(const ExtReal& v);
std::string fmt(long v);
std::string fmt(double v);

Json budgetToJson(const KBudget& budget);

}  // namespace sskit
