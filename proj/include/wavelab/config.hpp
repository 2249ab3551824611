#pragma once

#include "wavelab/estimates.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavelab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  LabSetup setup;
  SuiteSettings suite;
  std::vector<std::string> estimate_ids;
  std::string output_dir = "wavelab_out";
  bool cache = true;
  std::string cache_dir;  // default: <output_dir>/cache
  int threads = 1;

  // Re-checks every model invariant; throws ConfigError naming the violated one.
  void validate() const;
  std::string effective_cache_dir() const;
};

// key = value lines under [section] headers; lines starting with '#' or ';' are comments.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Comma or whitespace separated numbers.
std::vector<double> parse_list(const std::string& text);
std::vector<std::string> parse_id_list(const std::string& text);

// The [model], [grid], [potential] and [profile] sections in canonical form.
std::map<std::string, std::string> model_section(const ExperimentConfig& cfg);
std::string render_config(const ExperimentConfig& cfg);

}  // namespace wavelab
