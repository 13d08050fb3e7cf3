#include "walshfejer/report.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace walshfejer {

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << quote(cells[i]);
  }
  out << '\n';
}

// Metadata values are written on one line; newlines would break the format.
std::string one_line(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

}  // namespace

bool ExperimentReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "# experiment=" << one_line(report.id) << '\n';
  out << "# version=" << WALSHFEJER_VERSION << '\n';
  out << "# mode=" << one_line(report.mode) << '\n';
  for (const auto& [k, v] : report.params) out << "# param." << k << '=' << one_line(v) << '\n';
  for (const auto& [k, v] : report.summary) out << "# summary." << k << '=' << one_line(v) << '\n';
  for (const auto& c : report.checks)
    out << "# check." << c.name << '=' << (c.pass ? "PASS" : "FAIL") << ' ' << one_line(c.detail) << '\n';
  write_row(out, report.columns);
  for (const auto& row : report.rows) write_row(out, row);
}

ExperimentReport read_csv(std::istream& in) {
  ExperimentReport report;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen && line.rfind("# ", 0) == 0) {
      std::string body = line.substr(2);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "experiment") {
        report.id = value;
      } else if (key == "mode") {
        report.mode = value;
      } else if (key.rfind("param.", 0) == 0) {
        report.add_param(key.substr(6), value);
      } else if (key.rfind("summary.", 0) == 0) {
        report.add_summary(key.substr(8), value);
      } else if (key.rfind("check.", 0) == 0) {
        bool pass = value.rfind("PASS", 0) == 0;
        if (!pass && value.rfind("FAIL", 0) != 0) throw std::invalid_argument("bad check line: " + line);
        report.add_check(key.substr(6), pass, value.size() > 5 ? value.substr(5) : "");
      }
      continue;
    }
    if (!header_seen) {
      report.columns = split_row(line);
      header_seen = true;
    } else if (!line.empty()) {
      report.rows.push_back(split_row(line));
    }
  }
  if (!header_seen) throw std::invalid_argument("CSV has no header row");
  return report;
}

void write_summary(std::ostream& out, const ExperimentReport& report) {
  out << "experiment " << report.id << " (" << report.mode << ")\n";
  for (const auto& [k, v] : report.params) out << "  " << k << " = " << v << '\n';
  for (const auto& [k, v] : report.summary) out << "  " << k << ": " << v << '\n';
  for (const auto& c : report.checks)
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << '\n';
}

}  // namespace walshfejer
