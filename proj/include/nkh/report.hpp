#pragma once

#include <map>
#include <string>
#include <vector>

#include "nkh/connection.hpp"

namespace nkh {

/// Machine-readable run report.  Serializes deterministically: sorted keys,
/// canonical number formatting, no timing fields unless requested.
struct ReportDocument {
  int schema_version = 1;
  std::string model;
  std::string command;
  std::string backend;  // "exact" or "float"
  unsigned long seed = 0;
  std::map<std::string, std::string> parameters;
  std::string verdict;
  std::map<std::string, double> norms;
  std::map<std::string, std::string> solved;
  std::map<std::string, double> residuals;
  bool ok = true;
  double wall_time_ms = -1.0;  // emitted only when >= 0

  std::string to_json() const;
};

struct SweepRow {
  std::map<std::string, std::string> parameters;
  std::string verdict;
  bool analytic_match = true;  // verdict agrees with the analytic locus
  double residual = 0.0;
};

struct SweepTable {
  std::string model;
  std::vector<std::string> parameter_names;
  std::vector<SweepRow> rows;

  std::string to_json(const std::string& backend, unsigned long seed) const;
  std::string to_csv() const;
  bool all_match() const;
};

/// Validates the JSON report schema (shape + required keys).
bool validate_report_json(const std::string& text, std::string* error = nullptr);

/// Canonical float formatting used in all report output.
std::string format_double(double v);

void fill_report_from_classification(ReportDocument& doc, const ClassificationReport& rep);

}  // namespace nkh
