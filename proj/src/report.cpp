#include "nkh/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace nkh {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json norms_to_json(const std::map<std::string, double>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = format_double(v);
  return j;
}

}  // namespace

std::string ReportDocument::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["model"] = model;
  j["command"] = command;
  j["backend"] = backend;
  j["seed"] = seed;
  j["parameters"] = parameters;
  j["verdict"] = verdict;
  j["norms"] = norms_to_json(norms);
  j["solved"] = solved;
  j["residuals"] = norms_to_json(residuals);
  j["ok"] = ok;
  if (wall_time_ms >= 0) j["wall_time_ms"] = format_double(wall_time_ms);
  return j.dump(2);
}

std::string SweepTable::to_json(const std::string& backend, unsigned long seed) const {
  json j;
  j["schema_version"] = 1;
  j["model"] = model;
  j["command"] = "sweep";
  j["backend"] = backend;
  j["seed"] = seed;
  j["parameter_names"] = parameter_names;
  json rows_json = json::array();
  for (const auto& r : rows) {
    json row;
    row["parameters"] = r.parameters;
    row["verdict"] = r.verdict;
    row["analytic_match"] = r.analytic_match;
    row["residual"] = format_double(r.residual);
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  j["ok"] = all_match();
  return j.dump(2);
}

std::string SweepTable::to_csv() const {
  std::string out;
  for (const auto& name : parameter_names) out += name + ",";
  out += "verdict,analytic_match,residual\n";
  for (const auto& r : rows) {
    for (const auto& name : parameter_names) {
      auto it = r.parameters.find(name);
      out += (it == r.parameters.end() ? "" : it->second) + ",";
    }
    out += r.verdict + "," + (r.analytic_match ? "true" : "false") + "," + format_double(r.residual) + "\n";
  }
  return out;
}

bool SweepTable::all_match() const {
  for (const auto& r : rows)
    if (!r.analytic_match) return false;
  return true;
}

bool validate_report_json(const std::string& text, std::string* error) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    if (error) *error = "not valid JSON";
    return false;
  }
  auto need = [&](const char* key, bool ok_type) {
    if (!j.contains(key)) {
      if (error) *error = std::string("missing key '") + key + "'";
      return false;
    }
    if (!ok_type) {
      if (error) *error = std::string("wrong type for '") + key + "'";
      return false;
    }
    return true;
  };
  if (!need("schema_version", j.value("schema_version", 0) >= 1)) return false;
  if (!need("model", j.contains("model") && j["model"].is_string())) return false;
  if (!need("command", j.contains("command") && j["command"].is_string())) return false;
  if (!need("backend", j.contains("backend") && j["backend"].is_string())) return false;
  if (j.contains("rows")) {
    if (!j["rows"].is_array()) {
      if (error) *error = "rows must be an array";
      return false;
    }
    for (const auto& r : j["rows"]) {
      if (!r.contains("parameters") || !r.contains("verdict")) {
        if (error) *error = "sweep row missing parameters/verdict";
        return false;
      }
    }
  } else if (!j.contains("verdict")) {
    if (error) *error = "missing key 'verdict'";
    return false;
  }
  return true;
}

void fill_report_from_classification(ReportDocument& doc, const ClassificationReport& rep) {
  doc.verdict = verdict_name(rep.verdict);
  doc.norms["nabla_omega"] = rep.nabla_omega_norm;
  doc.norms["antisym_part"] = rep.antisym_part_norm;
  doc.norms["sym_residual"] = rep.sym_residual_norm;
  doc.norms["nijenhuis"] = rep.nijenhuis_norm;
  doc.norms["dw34"] = rep.dw34_norm;
  doc.norms["omega_wedge_domega"] = rep.omega_wedge_domega_norm;
  doc.solved["naturally_reductive"] = rep.naturally_reductive ? "true" : "false";
  doc.solved["three_symmetric_canonical"] = rep.three_symmetric_canonical ? "true" : "false";
  if (rep.type_constant) doc.solved["type_constant"] = rep.type_constant->str();
}

}  // namespace nkh
