#include "wavelab/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace wavelab {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.at(key).get<double>();
}

CheckKind parse_kind(const std::string& s) {
  if (s == "ratio") return CheckKind::ratio;
  if (s == "value") return CheckKind::value;
  return CheckKind::exponent;
}

Bound parse_bound(const std::string& s) {
  if (s == "at_least") return Bound::at_least;
  if (s == "at_most") return Bound::at_most;
  return Bound::two_sided;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}

}  // namespace

json report_json(const DecayFitReport& r) {
  json xs = json::array(), ys = json::array();
  for (double x : r.xs) xs.push_back(number(x));
  for (double y : r.ys) ys.push_back(number(y));
  return json{{"estimate_id", r.estimate_id},
              {"name", r.name},
              {"variable", r.variable},
              {"kind", to_string(r.kind)},
              {"bound", to_string(r.bound)},
              {"target", number(r.target)},
              {"tolerance", number(r.tolerance)},
              {"fitted", number(r.fitted)},
              {"constant", number(r.constant)},
              {"residual", number(r.residual)},
              {"residual_cap", number(r.residual_cap)},
              {"window", {number(r.window_lo), number(r.window_hi)}},
              {"x", xs},
              {"y", ys},
              {"note", r.note},
              {"pass", r.pass}};
}

DecayFitReport report_from_json(const json& j) {
  DecayFitReport r;
  r.estimate_id = j.value("estimate_id", "");
  r.name = j.value("name", "");
  r.variable = j.value("variable", "");
  r.kind = parse_kind(j.value("kind", "exponent"));
  r.bound = parse_bound(j.value("bound", "two_sided"));
  r.target = read_number(j, "target");
  r.tolerance = read_number(j, "tolerance");
  r.fitted = read_number(j, "fitted");
  r.constant = read_number(j, "constant");
  r.residual = read_number(j, "residual");
  r.residual_cap = read_number(j, "residual_cap");
  if (j.contains("window") && j["window"].size() == 2) {
    r.window_lo = j["window"][0].is_null() ? 0.0 : j["window"][0].get<double>();
    r.window_hi = j["window"][1].is_null() ? 0.0 : j["window"][1].get<double>();
  }
  for (const auto& x : j.value("x", json::array()))
    r.xs.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>());
  for (const auto& y : j.value("y", json::array()))
    r.ys.push_back(y.is_null() ? std::numeric_limits<double>::quiet_NaN() : y.get<double>());
  r.note = j.value("note", "");
  r.pass = j.value("pass", false);
  return r;
}

EstimateResult select_estimate(const EstimateResult& res, const std::string& id) {
  if (estimate_group(id) == id) {
    EstimateResult all = res;
    all.id = id;
    return all;
  }
  EstimateResult out;
  out.id = id;
  out.title = res.title;
  for (const auto& r : res.reports)
    if (r.estimate_id == id) out.reports.push_back(r);
  out.notes = res.notes;
  return out;
}

json estimate_json(const EstimateResult& res, const std::map<std::string, std::string>& metadata) {
  json reports = json::array();
  for (const auto& r : res.reports) reports.push_back(report_json(r));
  json meta = json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  return json{{"estimate_id", res.id}, {"title", res.title}, {"pass", res.pass()},
              {"reports", reports},    {"notes", res.notes}, {"metadata", meta}};
}

EstimateResult estimate_from_json(const json& j) {
  EstimateResult res;
  res.id = j.value("estimate_id", "");
  res.title = j.value("title", "");
  for (const auto& r : j.value("reports", json::array())) res.reports.push_back(report_from_json(r));
  res.notes = j.value("notes", std::vector<std::string>{});
  return res;
}

std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  return out;
}

std::string write_estimate_json(const std::string& dir, const EstimateResult& res,
                                const std::map<std::string, std::string>& metadata) {
  std::filesystem::create_directories(dir);
  std::string path = (std::filesystem::path(dir) / ("estimate_" + file_safe(res.id) + ".json")).string();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << estimate_json(res, metadata).dump(2) << "\n";
  return path;
}

std::vector<EstimateResult> read_estimate_dir(const std::string& dir) {
  std::vector<std::string> files;
  if (!std::filesystem::is_directory(dir)) return {};
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("estimate_", 0) == 0 && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<EstimateResult> out;
  for (const auto& f : files) {
    std::ifstream is(f);
    out.push_back(estimate_from_json(json::parse(is)));
  }
  return out;
}

void write_rollup_csv(std::ostream& os, const std::vector<EstimateResult>& results) {
  os << "estimate_id,variable,target,fitted,tolerance,pass\n";
  for (const auto& res : results)
    for (const auto& r : res.reports)
      os << csv_field(r.estimate_id) << ',' << csv_field(r.variable) << ',' << csv_number(r.target) << ','
         << csv_number(r.fitted) << ',' << csv_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
}

}  // namespace wavelab
