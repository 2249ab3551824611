#include "cli_app.hpp"

#include "wavelab/cache.hpp"
#include "wavelab/config.hpp"
#include "wavelab/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wavelab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("wavelab_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "wavelab");
  std::ostringstream out, err;
  int rc = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("config parsing") {
  ExperimentConfig c = parse_config(
      "# comment\n[model]\nn = 4\n[grid]\nR = 32\nM = 640\n[potential]\nc = 1.5\n"
      "[scan]\nh_set = 1, 0.5, 0.25\n[run]\nestimates = 3.1, kernel\nthreads = 2\ncache = false\n");
  CHECK(c.setup.grid.M == 640);
  CHECK(c.setup.potential.c == 1.5);
  CHECK(c.suite.h_set == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(c.estimate_ids == std::vector<std::string>{"3.1", "kernel"});
  CHECK(c.threads == 2);
  CHECK(c.effective_cache_dir().empty());
  ExperimentConfig again = parse_config(render_config(c));
  CHECK(render_config(again) == render_config(c));
  CHECK(parse_list("1 2,3") == std::vector<double>{1, 2, 3});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[grid]\nM = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nN = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[colour]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[potential]\ndelta = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scan]\nh_set = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scan]\ns_set = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nestimates = 7.7\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nthreads = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[profile]\nkind = gauss\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/wavelab.ini"), ConfigError);
}

TEST_CASE("model key") {
  ExperimentConfig a, b;
  b.setup.potential.c = 2.0;
  CHECK(cache_key(model_section(a)) == cache_key(model_section(b)));
  b.setup.grid.M = 1000;
  CHECK(cache_key(model_section(a)) != cache_key(model_section(b)));
  b = a;
  b.output_dir = "elsewhere";  // run settings are not part of the model
  CHECK(cache_key(model_section(a)) == cache_key(model_section(b)));
}

TEST_CASE("exit codes") {
  fs::path d = scratch("codes");
  std::string out, err;
  CHECK(run({"verify", "--out", d.string()}, &out) == cli::kAllPass);
  CHECK(out.find("no estimates") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "rollup.csv"));
  CHECK(run({"verify", "9.99", "--out", d.string()}, nullptr, &err) == cli::kConfigError);
  CHECK(err.find("9.99") != std::string::npos);
  std::string bad = write_file(d / "bad.ini", "[grid]\nM = 2\n");
  CHECK(run({"--config", bad, "verify"}) == cli::kConfigError);
  CHECK(run({"verify", "--threads", "0"}) == cli::kConfigError);
  CHECK(run({"frobnicate"}) == cli::kConfigError);
  CHECK(run({}) == cli::kConfigError);
}

TEST_CASE("verify and report without potential") {
  fs::path d = scratch("zero");
  std::string cfg = write_file(d / "zero.ini", "[potential]\nc = 0\n[run]\nestimates = 3.1\n");
  std::string out;
  CHECK(run({"verify", "--config", cfg, "--out", (d / "out").string(), "--no-cache"}, &out) == cli::kAllPass);
  fs::path json = d / "out" / "estimate_3.1.json";
  REQUIRE(fs::exists(json));
  nlohmann::json j;
  std::ifstream(json) >> j;
  CHECK(j["pass"] == true);
  CHECK(j["reports"][0]["fitted"] == 0.0);
  CHECK(j["metadata"].contains("generated_at"));
  CHECK_FALSE(fs::exists(d / "out" / "cache"));

  std::string rollup;
  CHECK(run({"report", "--out", (d / "out").string()}, &rollup) == cli::kAllPass);
  CHECK(rollup.find("3.1,none,0.0,0.0,0.0,true") != std::string::npos);
  fs::remove_all(d);
}
