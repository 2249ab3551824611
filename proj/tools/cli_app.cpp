#include "cli_app.hpp"

#include "wavelab/cache.hpp"
#include "wavelab/config.hpp"
#include "wavelab/estimates.hpp"
#include "wavelab/freekernel.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/propagator.hpp"
#include "wavelab/report.hpp"
#include "wavelab/resolvent.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace wavelab::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string estimates;
  std::string out;
  bool cache = true;
  bool cache_set = false;
  int threads = 0;
  std::vector<std::string> ids;
};

ExperimentConfig resolve_config(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config);
  if (!f.estimates.empty()) cfg.estimate_ids = parse_id_list(f.estimates);
  if (!f.ids.empty()) cfg.estimate_ids = f.ids;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (f.cache_set) cfg.cache = f.cache;
  if (f.threads > 0) cfg.threads = f.threads;
  cfg.validate();
  return cfg;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& name, std::ostream& out) {
  fs::create_directories(dir);
  std::string path = (fs::path(dir) / name).string();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  out << "wrote " << path << "\n";
  return os;
}

int cmd_kernel(const ExperimentConfig& cfg, std::ostream& out) {
  const LabSetup& s = cfg.setup;
  std::vector<double> h_set = cfg.suite.h_set.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125} : cfg.suite.h_set;
  std::vector<double> t_set = cfg.suite.t_set.empty() ? std::vector<double>{8, 16, 32, 64, 128} : cfg.suite.t_set;
  std::vector<KernelSample> rows;
  for (double h : h_set)
    for (double t : t_set)
      for (int k = 1; k * 0.05 * h <= t + 8.0 * h; ++k) {
        double sg = k * 0.05 * h;
        rows.push_back({sg, t, h, eval_Kh(s.n, s.phi, h, sg, t)});
      }
  {
    std::ofstream os = open_out(cfg.output_dir, "kernel_scan.csv", out);
    write_kernel_csv(os, rows);
  }
  EstimateResult r = run_estimate_group("kernel", make_context(s, cfg.effective_cache_dir()), cfg.suite);
  for (const auto& x : r.reports)
    out << x.estimate_id << "  " << x.name << "  fitted " << x.fitted << "  " << (x.pass ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kAllPass : kAnyFail;
}

int cmd_resolvent(const ExperimentConfig& cfg, std::ostream& out) {
  const LabSetup& s = cfg.setup;
  AbsorptionOptions o;
  if (!cfg.suite.lambda_grid.empty()) o.lambdas = cfg.suite.lambda_grid;
  std::vector<LAPoint> rows;
  for (bool free : {true, false})
    for (Sign sg : {Sign::plus, Sign::minus}) {
      LAScan scan = la_norm_scan(s.grid, s.n, s.potential, o.lambdas, sg, o.eps, free);
      rows.insert(rows.end(), scan.points.begin(), scan.points.end());
      out << (free ? "free " : "perturbed ") << (sg == Sign::plus ? "+" : "-") << "  slope " << scan.slope
          << "  lambda*norm ratio " << scan.ratio << "\n";
    }
  std::ofstream os = open_out(cfg.output_dir, "la_scan.csv", out);
  write_la_csv(os, rows);
  return kAllPass;
}

int cmd_propagator(const ExperimentConfig& cfg, std::ostream& out) {
  LabContext ctx = make_context(cfg.setup, cfg.effective_cache_dir());
  EstimateResult r = check_propagators(ctx);
  std::vector<PropagatorNormRow> rows;
  for (double h : {1.0, 0.5})
    for (double t : {1.0, 4.0, 16.0}) {
      PropagatorRecord p = wave_multiplier(ctx.e, ctx.phi(), h, t);
      rows.push_back({t, h, "L2", op_norm2(p.matrix), to_string(PropagatorMethod::eigen)});
      rows.push_back({t, h, "L1->Linf", sector_l1_to_linf(p.matrix, ctx.grid(), ctx.n()),
                      to_string(PropagatorMethod::eigen)});
    }
  {
    std::ofstream os = open_out(cfg.output_dir, "propagator_norms.csv", out);
    write_propagator_csv(os, rows);
  }
  for (const auto& x : r.reports)
    out << x.name << "  " << x.fitted << " <= " << x.target << "  " << (x.pass ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kAllPass : kAnyFail;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.estimate_ids.empty()) {
    out << "no estimates selected\n";
    return kAllPass;
  }
  // ids sharing a group share one computation
  std::vector<std::string> groups;
  std::map<std::string, std::vector<std::string>> ids_of;
  for (const auto& id : cfg.estimate_ids) {
    std::string g = estimate_group(id);
    if (!ids_of.count(g)) groups.push_back(g);
    auto& v = ids_of[g];
    if (std::find(v.begin(), v.end(), id) == v.end()) v.push_back(id);
  }
  LabContext ctx = make_context(cfg.setup, cfg.effective_cache_dir());
  const std::string key = cache_key(model_section(cfg));

  std::vector<EstimateResult> results(groups.size());
  std::vector<std::string> errors(groups.size());
  std::vector<double> seconds(groups.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < groups.size();) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = run_estimate_group(groups[i], ctx, cfg.suite);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(groups.size())));
  for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // single writer
  bool all_pass = true;
  std::vector<EstimateResult> written;
  for (size_t i = 0; i < groups.size(); ++i) {
    for (const auto& id : ids_of[groups[i]]) {
      EstimateResult sel;
      if (errors[i].empty()) {
        sel = select_estimate(results[i], id);
      } else {
        sel.id = id;
        sel.title = groups[i];
        DecayFitReport failed;
        failed.estimate_id = id;
        failed.name = "check aborted";
        failed.kind = CheckKind::value;
        failed.note = errors[i];
        failed.pass = false;
        sel.reports.push_back(failed);
        err << "estimate " << id << ": " << errors[i] << "\n";
      }
      std::map<std::string, std::string> meta = {
          {"generated_at", utc_now()}, {"wall_seconds", std::to_string(seconds[i])}, {"model_key", key}};
      std::string path = write_estimate_json(cfg.output_dir, sel, meta);
      out << (sel.pass() ? "PASS  " : "FAIL  ") << id << "  " << path << "\n";
      all_pass = all_pass && sel.pass();
      written.push_back(std::move(sel));
    }
  }
  std::ofstream os = open_out(cfg.output_dir, "rollup.csv", out);
  write_rollup_csv(os, written);
  return all_pass ? kAllPass : kAnyFail;
}

int cmd_report(const ExperimentConfig& cfg, std::ostream& out) {
  std::vector<EstimateResult> all = read_estimate_dir(cfg.output_dir);
  write_rollup_csv(out, all);
  {
    std::ofstream os = open_out(cfg.output_dir, "rollup.csv", out);
    write_rollup_csv(os, all);
  }
  for (const auto& r : all)
    if (!r.pass()) return kAnyFail;
  return kAllPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wavelab: numerical checks of frequency-localized wave estimates"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* a) {
    a->add_option("--config", f.config, "key = value config file");
    a->add_option("--estimates", f.estimates, "comma separated estimate ids or group names");
    a->add_option("--out", f.out, "output directory");
    a->add_flag("--cache,!--no-cache", f.cache, "cache eigendecompositions")->each([&](const std::string&) {
      f.cache_set = true;
    });
    a->add_option("--threads", f.threads, "parallel checks")->check(CLI::PositiveNumber);
  };
  add_common(&app);
  auto* kernel = app.add_subcommand("kernel", "free kernel scans");
  auto* resolvent = app.add_subcommand("resolvent", "limiting absorption scans");
  auto* propagator = app.add_subcommand("propagator", "propagator method cross-checks");
  auto* verify = app.add_subcommand("verify", "run the estimate suite");
  auto* report = app.add_subcommand("report", "roll up the JSON reports in the output directory");
  verify->add_option("ids", f.ids, "estimate ids or group names");
  for (auto* s : {kernel, resolvent, propagator, verify, report}) add_common(s);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAllPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }

  ExperimentConfig cfg;
  try {
    cfg = resolve_config(f);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    if (kernel->parsed()) return cmd_kernel(cfg, out);
    if (resolvent->parsed()) return cmd_resolvent(cfg, out);
    if (propagator->parsed()) return cmd_propagator(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kAnyFail;
  }
  return kConfigError;
}

}  // namespace wavelab::cli
