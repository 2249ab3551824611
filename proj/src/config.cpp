#include "wavelab/config.hpp"

#include "wavelab/cache.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace wavelab {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"model", {"n"}},
      {"grid", {"R", "M"}},
      {"potential", {"c", "delta"}},
      {"profile", {"a_lo", "a_hi", "kind"}},
      {"scan", {"h_set", "t_set", "s_set", "lambda_grid", "theta_set"}},
      {"run", {"estimates", "out", "cache", "cache_dir", "threads"}},
  };
  return k;
}

double to_double(const std::string& key, const std::string& text) {
  std::string t = text;
  size_t a = t.find_first_not_of(" \t");
  size_t b = t.find_last_not_of(" \t");
  t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(key + ": '" + text + "' is not a number");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": '" + text + "' is not an integer");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": '" + text + "' is not a boolean");
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

void check_positive(const std::string& key, const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(key + ": entries must be finite and > 0");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(to_double("list", tok));
  return out;
}

std::vector<std::string> parse_id_list(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

void ExperimentConfig::validate() const {
  try {
    setup.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  check_positive("scan.h_set", suite.h_set);
  check_positive("scan.t_set", suite.t_set);
  check_positive("scan.lambda_grid", suite.lambda_grid);
  for (double h : suite.h_set)
    if (h > 1.0) throw ConfigError("scan.h_set: h must lie in (0, 1]");
  for (double th : suite.theta_set)
    if (!(th > 0.0 && th <= 1.0)) throw ConfigError("scan.theta_set: theta must lie in (0, 1]");
  for (double s : suite.s_set)
    if (!(s >= 0.0 && s <= 0.5 * (setup.n - 1)))
      throw ConfigError("scan.s_set: s must lie in [0, (n-1)/2]");
  for (const auto& id : estimate_ids)
    if (estimate_group(id).empty()) throw ConfigError("run.estimates: unknown estimate id '" + id + "'");
  if (threads < 1) throw ConfigError("run.threads must be >= 1");
  if (output_dir.empty()) throw ConfigError("run.out must not be empty");
}

std::string ExperimentConfig::effective_cache_dir() const {
  if (!cache) return "";
  if (!cache_dir.empty()) return cache_dir;
  return (std::filesystem::path(output_dir) / "cache").string();
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& kv : body)
      if (!it->second.count(kv.first)) throw ConfigError("unknown key " + section + "." + kv.first);
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '/'))) return *v;
    return std::nullopt;
  };

  ExperimentConfig cfg;
  LabSetup& s = cfg.setup;
  if (auto v = get("model/n")) s.n = to_int("model.n", *v);
  if (auto v = get("grid/R")) s.grid.R = to_double("grid.R", *v);
  if (auto v = get("grid/M")) s.grid.M = to_int("grid.M", *v);
  if (auto v = get("potential/c")) s.potential.c = to_double("potential.c", *v);
  if (auto v = get("potential/delta")) s.potential.delta = to_double("potential.delta", *v);
  if (auto v = get("profile/a_lo")) s.phi.a_lo = to_double("profile.a_lo", *v);
  if (auto v = get("profile/a_hi")) s.phi.a_hi = to_double("profile.a_hi", *v);
  if (auto v = get("profile/kind")) {
    try {
      s.phi.kind = parse_profile_kind(*v);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("profile.kind: ") + e.what());
    }
  }
  if (auto v = get("scan/h_set")) cfg.suite.h_set = parse_list(*v);
  if (auto v = get("scan/t_set")) cfg.suite.t_set = parse_list(*v);
  if (auto v = get("scan/s_set")) cfg.suite.s_set = parse_list(*v);
  if (auto v = get("scan/lambda_grid")) cfg.suite.lambda_grid = parse_list(*v);
  if (auto v = get("scan/theta_set")) cfg.suite.theta_set = parse_list(*v);
  if (auto v = get("run/estimates")) cfg.estimate_ids = parse_id_list(*v);
  if (auto v = get("run/out")) cfg.output_dir = *v;
  if (auto v = get("run/cache")) cfg.cache = to_bool("run.cache", *v);
  if (auto v = get("run/cache_dir")) cfg.cache_dir = *v;
  if (auto v = get("run/threads")) cfg.threads = to_int("run.threads", *v);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::map<std::string, std::string> model_section(const ExperimentConfig& cfg) {
  const LabSetup& s = cfg.setup;
  std::map<std::string, std::string> m;
  m["n"] = fmt(s.n);
  m["R"] = fmt(s.grid.R);
  m["M"] = fmt(s.grid.M);
  m["c"] = fmt(s.potential.c);
  m["delta"] = fmt(s.potential.delta);
  m["a_lo"] = fmt(s.phi.a_lo);
  m["a_hi"] = fmt(s.phi.a_hi);
  m["kind"] = to_string(s.phi.kind);
  return m;
}

std::string render_config(const ExperimentConfig& cfg) {
  const LabSetup& s = cfg.setup;
  std::ostringstream os;
  os << "[model]\nn = " << s.n << "\n\n";
  os << "[grid]\nR = " << fmt(s.grid.R) << "\nM = " << s.grid.M << "\n\n";
  os << "[potential]\nc = " << fmt(s.potential.c) << "\ndelta = " << fmt(s.potential.delta) << "\n\n";
  os << "[profile]\na_lo = " << fmt(s.phi.a_lo) << "\na_hi = " << fmt(s.phi.a_hi) << "\nkind = " << to_string(s.phi.kind)
     << "\n\n";
  os << "[scan]\n";
  if (!cfg.suite.h_set.empty()) os << "h_set = " << join(cfg.suite.h_set) << "\n";
  if (!cfg.suite.t_set.empty()) os << "t_set = " << join(cfg.suite.t_set) << "\n";
  if (!cfg.suite.s_set.empty()) os << "s_set = " << join(cfg.suite.s_set) << "\n";
  if (!cfg.suite.lambda_grid.empty()) os << "lambda_grid = " << join(cfg.suite.lambda_grid) << "\n";
  if (!cfg.suite.theta_set.empty()) os << "theta_set = " << join(cfg.suite.theta_set) << "\n";
  os << "\n[run]\nestimates =";
  for (size_t i = 0; i < cfg.estimate_ids.size(); ++i) os << (i ? ", " : " ") << cfg.estimate_ids[i];
  os << "\nout = " << cfg.output_dir << "\ncache = " << (cfg.cache ? "true" : "false") << "\n";
  if (!cfg.cache_dir.empty()) os << "cache_dir = " << cfg.cache_dir << "\n";
  os << "threads = " << cfg.threads << "\n";
  return os.str();
}

}  // namespace wavelab
