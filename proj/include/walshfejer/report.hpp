#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "walshfejer/rational.hpp"

namespace walshfejer {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Tabular output of one experiment. Every cell is already formatted, so the
/// CSV form reproduces the report exactly.
struct ExperimentReport {
  std::string id;
  std::string mode;  // "exact" or "float"
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<CheckResult> checks;

  void add_param(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
  void add_summary(std::string key, std::string value) { summary.emplace_back(std::move(key), std::move(value)); }
  void add_check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_passed() const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// 17 significant digits, locale independent.
std::string format_real(Real v);

/// `#`-prefixed metadata (experiment, version, mode, param.*, summary.*,
/// check.*), then the header row and the data rows. LF line endings.
void write_csv(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_csv(std::istream& in);

/// Human-readable summary: parameters, summary values and checks.
void write_summary(std::ostream& out, const ExperimentReport& report);

}  // namespace walshfejer
