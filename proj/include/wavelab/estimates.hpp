#pragma once

#include "wavelab/fit.hpp"
#include "wavelab/profile.hpp"
#include "wavelab/radialop.hpp"

#include <string>
#include <vector>

namespace wavelab {

struct LabSetup {
  int n = 4;
  RadialGrid grid;
  PotentialSpec potential;
  BumpProfile phi = BumpProfile::bump(1.0, 2.0);

  void validate() const;
};

// Operators and eigenpairs shared read-only by all checks.
struct LabContext {
  LabSetup setup;
  DiscreteOperator op0, op;
  Eigenpairs e0, e;

  int n() const { return setup.n; }
  const RadialGrid& grid() const { return setup.grid; }
  const PotentialSpec& potential() const { return setup.potential; }
  const BumpProfile& phi() const { return setup.phi; }
};

// cache_dir empty: no caching of eigenpairs.
LabContext make_context(const LabSetup& setup, const std::string& cache_dir = "");

struct EstimateResult {
  std::string id;
  std::string title;
  std::vector<DecayFitReport> reports;
  std::vector<std::string> notes;

  bool pass() const;
  // First report with this name; throws std::out_of_range if absent.
  const DecayFitReport& get(const std::string& name) const;
  bool has(const std::string& name) const;
};

// Free kernel bounds: pointwise, Plancherel-type time integral and light-cone integral.
struct KernelBoundsOptions {
  std::vector<double> t_set = {8, 16, 32, 64, 128};
  std::vector<double> h_set = {1.0, 0.5, 0.25, 0.125};
  double h_scan_t = 16.0;
  double sigma_step = 0.05;   // times h
  double sigma_margin = 8.0;  // sup over sigma in (0, t + margin h]
  std::vector<double> plancherel_sigmas = {1, 2, 4, 8, 16};
  double plancherel_h_sigma = 1.0;
  double light_cone_cap = 3.0;
};
EstimateResult check_kernel_bounds(int n, const BumpProfile& phi, const KernelBoundsOptions& opt = {});

// sup over the sigma grid of |K_h(sigma, t)| sigma^{(n-1)/2 - s}; cached per (n, phi, h, t, grid).
struct KernelSup {
  double value = 0.0;
  double argmax = 0.0;
};
KernelSup kernel_sup(int n, const BumpProfile& phi, double h, double t, double s, double sigma_step = 0.05,
                     double sigma_margin = 8.0);
// t^{(n-1)/2} int_0^{t/2} sigma^{n-1} |K_h(sigma, t)| d sigma
double light_cone_integral(int n, const BumpProfile& phi, double h, double t);
// 2 int_0^{t_max} |t|^{2s} |K_h(sigma, t)|^2 dt and the share of the last tenth of the window
struct TimeIntegral {
  double value = 0.0;
  double tail_share = 0.0;
};
TimeIntegral kernel_time_integral(int n, const BumpProfile& phi, double h, double sigma, double s, double t_max);

struct ScanOptions {
  std::vector<double> h_set = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> t_set = {4, 5.656854, 8, 11.313708, 16, 22.627417, 32, 45.254834, 64};
  std::vector<double> s_set = {0.0, 0.75, 1.5};
  double h_scan_t = 16.0;
  double eps = 0.05;
  double ratio_cap = 3.0;
};

// Free wave group: weighted L2 decay, L1 -> Linf, L2 -> Linf and the weighted time integral.
EstimateResult check_prop21(const LabContext& ctx, const ScanOptions& opt = {});
// sup_t ||Phi(t;h)|| against h.
EstimateResult check_thm31(const LabContext& ctx, const std::vector<double>& h_set = {1.0, 0.5, 0.25, 0.125},
                           const std::vector<double>& t_set = {1, 4, 16});

struct SmoothingOptions {
  std::vector<double> h_set = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> centers = {2, 4, 8, 16};
  double eps = 0.05;
  double t_max = 64.0;
  double tail_cap = 0.5;
  double ratio_cap = 3.0;
  int lambdas_per_h = 9;
};
// Time side with band-limited test vectors and frequency side Q(lambda) from LS solves.
EstimateResult check_smoothing(const LabContext& ctx, const SmoothingOptions& opt = {});

// Weighted norms of the perturbed group for s in s_set and the h = 1 version with weight 1/2 + s + eps.
// Uses opt.h_set as given; the reference scan is h in {1, 1/2, 1/4}.
EstimateResult check_thm34(const LabContext& ctx, const ScanOptions& opt);
ScanOptions thm34_defaults();

struct WeightedIntegralOptions {
  std::vector<double> h_set = {1.0, 0.5, 0.25};
  std::vector<double> centers = {1, 2, 4, 8};
  double s = -1.0;  // default (n-1)/2
  double eps = 0.05;
  double t_max = 64.0;
  double block_cap = 0.8;
  double ratio_cap = 3.0;
};
EstimateResult check_weighted_time_integral(const LabContext& ctx, const WeightedIntegralOptions& opt = {});

struct MollifierSuiteOptions {
  double s = 1.4;
  double eps = 0.05;
  double lambda0 = 1.5;
  std::vector<double> theta_set = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> t_set = {4, 8, 16, 32};
  std::vector<double> scan_t = {8, 32};
  double scan_factor = 2.0;
  double window = 24.0;
  int nodes = 64;
  double bound_cap = 3.0;
};
EstimateResult mollified_multiplier_suite(const LabContext& ctx, const MollifierSuiteOptions& opt = {});

// Phi(t;h) between L1, L2 and Linf on the sector.
EstimateResult check_thm41(const LabContext& ctx, const ScanOptions& opt = {});

struct AssemblyOptions {
  double a = 1.0;
  std::vector<double> t_set = {4, 5.656854, 8, 11.313708, 16, 22.627417, 32, 45.254834, 64};
  std::vector<double> sigma_grid = {0.3, 0.7, 1.0, 1.3, 1.7, 2.5, 4.0, 10.0, 40.0};
  std::vector<double> alphas = {0.0, 0.5, 1.0};
  double eps = 0.05;
  // chi_a is rolled off smoothly on [A/2, A], A = resolution / dr; modes above 1/dr are not resolved by the grid
  double resolution = 1.0;
};
EstimateResult assemble_thm11(const LabContext& ctx, const AssemblyOptions& opt = {});
// Largest deviation of sigma^{-beta} chi_a(sigma) from int_0^1 phi(theta sigma) theta^{beta-1} d theta,
// phi(s) = s^{1-beta} chi_a'(s).
double frequency_identity_residual(double a, double beta, const std::vector<double>& sigma_grid);

struct AbsorptionOptions {
  std::vector<double> lambdas = {1, 1.414214, 2, 2.828427, 4, 5.656854, 8};
  double eps = 0.05;
  double ratio_cap = 10.0;
  double cross_lambda = 2.0;
  double eta = 1.0;
  double cross_cap = 0.10;
};
// Free and perturbed weighted resolvent bounds and the complex-shift cross-check.
EstimateResult check_limiting_absorption(const LabContext& ctx, const AbsorptionOptions& opt = {});

// Localized multiplier differences and Bernstein-type bounds.
EstimateResult check_lemma23(const LabContext& ctx, const std::vector<double>& h_set = {1.0, 0.5, 0.25, 0.125},
                             double s = 1.0);

// Helffer-Sjostrand against the eigen multiplier.
EstimateResult check_functional_calculus(const LabContext& ctx, double h = 1.0, int N = 8, double tol = 1e-6);
// Eigen vs time-domain and eigen vs resolvent formula.
EstimateResult check_propagators(const LabContext& ctx);
// Phi_1 + h Phi_2 = Phi.
EstimateResult check_duhamel(const LabContext& ctx, double t = 4.0, double h = 0.5, double tol = 0.01);

// Scan sets taken from the configuration; empty lists keep each check's defaults.
struct SuiteSettings {
  std::vector<double> h_set;
  std::vector<double> t_set;
  std::vector<double> s_set;
  std::vector<double> lambda_grid;
  std::vector<double> theta_set;
};

// Registry used by the command line.
std::vector<std::string> known_estimate_ids();
// Group containing an id (several ids share one computation); empty if unknown.
std::string estimate_group(const std::string& id);
std::vector<std::string> estimate_groups();
EstimateResult run_estimate_group(const std::string& group, const LabContext& ctx, const SuiteSettings& suite = {});

}  // namespace wavelab
