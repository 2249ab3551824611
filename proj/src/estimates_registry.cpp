#include "wavelab/estimates.hpp"

#include <stdexcept>
#include <utility>

namespace wavelab {

namespace {

// estimate ids are interface data: they name the bounds the checks measure
const std::vector<std::pair<std::string, std::vector<std::string>>>& groups() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> g = {
      {"kernel", {"2.7", "2.8", "2.9"}},
      {"free-group", {"2.1", "2.2", "2.3", "2.4"}},
      {"multipliers", {"2.26", "2.27", "2.28", "2.29", "2.30", "2.31", "2.32", "2.33", "2.34"}},
      {"calculus", {"2.35"}},
      {"difference", {"3.1"}},
      {"smoothing", {"3.2", "3.15"}},
      {"duhamel", {"3.4"}},
      {"absorption", {"3.10", "3.11"}},
      {"weighted-decay", {"3.18", "3.19"}},
      {"time-integral", {"3.20"}},
      {"mollifier", {"3.40", "3.41", "3.43", "3.46"}},
      {"dispersive", {"4.1", "4.2", "4.6", "4.10"}},
      {"assembly", {"1.2", "1.3", "1.4"}},
      {"propagator", {"propagator"}},
  };
  return g;
}

template <class T>
void override_if(std::vector<T>& dst, const std::vector<T>& src) {
  if (!src.empty()) dst = src;
}

}  // namespace

ScanOptions thm34_defaults() {
  ScanOptions o;
  o.h_set = {1.0, 0.5, 0.25};
  return o;
}

std::vector<std::string> known_estimate_ids() {
  std::vector<std::string> out;
  for (const auto& [name, ids] : groups())
    for (const auto& id : ids) out.push_back(id);
  return out;
}

std::string estimate_group(const std::string& id) {
  for (const auto& [name, ids] : groups()) {
    if (name == id) return name;
    for (const auto& x : ids)
      if (x == id) return name;
  }
  return "";
}

std::vector<std::string> estimate_groups() {
  std::vector<std::string> out;
  for (const auto& g : groups()) out.push_back(g.first);
  return out;
}

EstimateResult run_estimate_group(const std::string& group, const LabContext& ctx, const SuiteSettings& suite) {
  ScanOptions scan;
  override_if(scan.h_set, suite.h_set);
  override_if(scan.t_set, suite.t_set);
  override_if(scan.s_set, suite.s_set);

  if (group == "kernel") {
    KernelBoundsOptions o;
    override_if(o.h_set, suite.h_set);
    return check_kernel_bounds(ctx.n(), ctx.phi(), o);
  }
  if (group == "free-group") return check_prop21(ctx, scan);
  if (group == "multipliers") {
    std::vector<double> h = {1.0, 0.5, 0.25, 0.125};
    override_if(h, suite.h_set);
    return check_lemma23(ctx, h);
  }
  if (group == "calculus") return check_functional_calculus(ctx);
  if (group == "difference") {
    std::vector<double> h = {1.0, 0.5, 0.25, 0.125};
    override_if(h, suite.h_set);
    return check_thm31(ctx, h);
  }
  if (group == "smoothing") {
    SmoothingOptions o;
    override_if(o.h_set, suite.h_set);
    return check_smoothing(ctx, o);
  }
  if (group == "duhamel") return check_duhamel(ctx);
  if (group == "absorption") {
    AbsorptionOptions o;
    override_if(o.lambdas, suite.lambda_grid);
    return check_limiting_absorption(ctx, o);
  }
  if (group == "weighted-decay") {
    ScanOptions o = thm34_defaults();
    override_if(o.h_set, suite.h_set);
    override_if(o.t_set, suite.t_set);
    override_if(o.s_set, suite.s_set);
    return check_thm34(ctx, o);
  }
  if (group == "time-integral") {
    WeightedIntegralOptions o;
    override_if(o.h_set, suite.h_set);
    return check_weighted_time_integral(ctx, o);
  }
  if (group == "mollifier") {
    MollifierSuiteOptions o;
    override_if(o.theta_set, suite.theta_set);
    return mollified_multiplier_suite(ctx, o);
  }
  if (group == "dispersive") return check_thm41(ctx, scan);
  if (group == "assembly") {
    AssemblyOptions o;
    override_if(o.t_set, suite.t_set);
    return assemble_thm11(ctx, o);
  }
  if (group == "propagator") return check_propagators(ctx);
  throw std::invalid_argument("unknown estimate group '" + group + "'");
}

}  // namespace wavelab
