#pragma once

#include "lab/harness.hpp"
#include "lab/run_config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace lab {

struct Check {
  std::string id;  // "<suite>.<name>"
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">="
  std::string detail;
};

struct CsvTable {
  std::string name;  // file stem under tables/
  std::string text;
};

struct SuiteResult {
  std::string suite;
  std::string geometry;
  bool skipped = false;
  std::string skip_reason;
  std::vector<Check> checks;
  std::vector<std::string> refused;  // skipped entries inside a suite that did run
  nlohmann::json data = nlohmann::json::object();
  std::vector<CsvTable> tables;
  double seconds = 0.0;
  bool passed() const;
  const Check* find(const std::string& id) const;
};

SuiteResult run_suite(const std::string& name, const RunConfig& rc);

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const SuiteResult& r);
// schema-versioned report; generated_at is the only field that varies between identical runs
nlohmann::json build_report(const RunConfig& rc, const std::vector<SuiteResult>& results,
                            const std::string& generated_at);
std::string human_summary(const RunConfig& rc, const std::vector<SuiteResult>& results);

inline constexpr const char* kReportSchemaVersion = "1.0";

}  // namespace lab
