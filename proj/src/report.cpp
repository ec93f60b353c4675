#include "sskit/report.hpp"

#include <cstdio>
#include <fstream>

#include "sskit/errors.hpp"
#include "sskit/machine.hpp"

namespace sskit {

Json CheckRecord::toJson() const {
  Json j;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["slack"] = slack;
  j["pass"] = pass;
  if (!note.empty()) j["note"] = note;
  return j;
}

void Report::addCheck(CheckRecord record) { checks.push_back(std::move(record)); }

void Report::finalize() {
  pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(::sskit::isaHash()));
  isaHash = buf;
}

Json Report::toJson(bool includeRuntime) const {
  Json j;
  j["suite"] = suite;
  j["config"] = config;
  j["isa_hash"] = isaHash;
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(c.toJson());
  j["checks"] = arr;
  j["pass"] = pass;
  if (includeRuntime) {
    j["runtime"] = Json{{"timing_ms", timingMs}, {"jobs", jobs}};
  }
  return j;
}

std::string Report::toJsonString(bool includeRuntime) const {
  return toJson(includeRuntime).dump(2) + "\n";
}

void Report::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write report: " + path);
  out << toJsonString();
}

std::string fmt(const Rat& r) { return ratToString(r); }
std::string fmt(const ExtReal& v) { return v.toString(); }
std::string fmt(long v) { return std::to_string(v); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json budgetToJson(const KBudget& budget) {
  return Json{{"lmax", budget.lmax},
              {"steps", budget.exec.maxSteps},
              {"cells", budget.exec.maxCells},
              {"output_cap", budget.exec.maxOutputBits}};
}

}  // namespace sskit
