#include "wavelab/estimates.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace wavelab;

namespace {

std::vector<double> geometric(double a, double ratio, int count) {
  std::vector<double> x;
  for (int i = 0; i < count; ++i) x.push_back(a * std::pow(ratio, i));
  return x;
}

}  // namespace

TEST_CASE("power-law fits") {
  std::vector<double> x = geometric(1.0, 2.0, 6), y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -2.0));
  PowerFit f = fit_power_law(x, y);
  CHECK(f.exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.constant == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);

  x = geometric(1.0, 1.5, 20);
  y.clear();
  for (double v : x) y.push_back((1.0 + 0.01 * std::sin(std::log(v))) / v);
  CHECK(std::abs(fit_power_law(x, y).exponent + 1.0) <= 0.02);

  CHECK(loglog_slope({1.0, 4.0}, {1.0, 16.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 2, 3}), FitError);
  CHECK_THROWS_AS(fit_power_law({1, 1.5, 2, 2.5}, {1, 2, 3, 4}), FitError);  // span < 10
  CHECK_THROWS_AS(fit_power_law({1, 2, 4, 16}, {1, 0, 1, 1}), FitError);
}

TEST_CASE("report semantics") {
  std::vector<double> x = geometric(1.0, 2.0, 5), y;
  for (double v : x) y.push_back(std::pow(v, -1.5));
  DecayFitReport two = exponent_report("2.1", "decay", "t", x, y, -1.4, 0.2);
  CHECK(two.pass);
  DecayFitReport up = exponent_report("3.18", "decay", "t", x, y, -1.3, 0.0, Bound::at_most);
  CHECK(up.pass);
  DecayFitReport low = exponent_report("3.1", "decay", "h", x, y, 0.8, 0.0, Bound::at_least);
  CHECK_FALSE(low.pass);

  DecayFitReport r = ratio_report("2.9", "cone", "t", x, {1.0, 2.0, 2.5, 1.5, 1.2}, 3.0);
  CHECK(r.fitted == doctest::Approx(2.5));
  CHECK(r.pass);
  CHECK_FALSE(ratio_report("2.9", "cone", "t", x, {1.0, 0.0, 1.0, 1.0, 1.0}, 3.0).pass);

  DecayFitReport v = value_report("3.4", "residual", 0.02, 0.01, Bound::at_most);
  CHECK_FALSE(v.pass);
  v.fitted = 0.005;
  v.evaluate();
  CHECK(v.pass);
  CHECK(spread({2.0, 4.0, 8.0}) == 4.0);
}

TEST_CASE("registry") {
  CHECK(estimate_group("2.8") == "kernel");
  CHECK(estimate_group("3.43") == "mollifier");
  CHECK(estimate_group("assembly") == "assembly");
  CHECK(estimate_group("9.9").empty());
  auto ids = known_estimate_ids();
  CHECK(std::find(ids.begin(), ids.end(), "4.10") != ids.end());
  CHECK_THROWS_AS(run_estimate_group("nope", LabContext{}), std::invalid_argument);
}

TEST_CASE("frequency integration identity") {
  std::vector<double> sigma = {0.3, 0.7, 1.0, 1.3, 1.7, 2.5, 4.0, 10.0, 40.0};
  for (double beta : {0.5, 1.0, 1.5}) CHECK(frequency_identity_residual(1.0, beta, sigma) <= 1e-8);
}

TEST_CASE("no potential gives exact zeros for the difference bound") {
  LabSetup s;
  s.grid = RadialGrid(24.0, 480);
  s.potential.c = 0.0;
  LabContext ctx = make_context(s);
  EstimateResult r = check_thm31(ctx, {1.0, 0.5, 0.25, 0.125});
  REQUIRE(r.reports.size() == 1);
  CHECK(r.reports[0].fitted == 0.0);
  CHECK(r.pass());
}

TEST_CASE("kernel bounds helpers") {
  BumpProfile phi = BumpProfile::bump(1.0, 2.0);
  KernelSup a = kernel_sup(4, phi, 1.0, 16.0, 0.0);
  CHECK(a.value > 0.0);
  CHECK(a.argmax > 8.0);  // mass sits near the light cone
  CHECK(a.argmax < 24.0);
  TimeIntegral ti = kernel_time_integral(4, phi, 1.0, 2.0, 0.0, 200.0);
  CHECK(ti.value > 0.0);
  CHECK(ti.tail_share < 1e-3);
}

TEST_CASE("JSON round trip and roll-up") {
  EstimateResult res;
  res.id = "kernel";
  res.title = "free kernel";
  std::vector<double> x = geometric(8.0, 2.0, 5), y;
  for (double v : x) y.push_back(std::pow(v, -1.5));
  res.reports.push_back(exponent_report("2.7", "sup decay", "t", x, y, -1.5, 0.2));
  res.reports.push_back(value_report("2.8", "plancherel gap", std::nan(""), 0.01, Bound::at_most));
  res.notes.push_back("a note");

  EstimateResult one = select_estimate(res, "2.7");
  CHECK(one.reports.size() == 1);
  CHECK(one.pass());
  CHECK(select_estimate(res, "kernel").reports.size() == 2);

  nlohmann::json j = estimate_json(res, {{"generated_at", "now"}});
  CHECK(j["reports"][1]["fitted"].is_null());
  EstimateResult back = estimate_from_json(j);
  CHECK(back.reports.size() == 2);
  CHECK(back.reports[0].fitted == doctest::Approx(-1.5));
  CHECK(std::isnan(back.reports[1].fitted));
  CHECK_FALSE(back.pass());
  // metadata is the only non-deterministic part
  nlohmann::json a = estimate_json(res, {{"generated_at", "x"}}), b = estimate_json(res, {{"generated_at", "y"}});
  a.erase("metadata");
  b.erase("metadata");
  CHECK(a == b);

  auto dir = std::filesystem::temp_directory_path() / "wavelab_test_reports";
  std::filesystem::remove_all(dir);
  write_estimate_json(dir.string(), one);
  write_estimate_json(dir.string(), select_estimate(res, "2.8"));
  auto all = read_estimate_dir(dir.string());
  REQUIRE(all.size() == 2);
  std::ostringstream os;
  write_rollup_csv(os, all);
  std::string csv = os.str();
  CHECK(csv.rfind("estimate_id,variable,target,fitted,tolerance,pass\n", 0) == 0);
  CHECK(csv.find("2.7,t,-1.5,") != std::string::npos);
  std::filesystem::remove_all(dir);
  CHECK(file_safe("a/b c") != "a/b c");
}
