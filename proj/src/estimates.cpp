#include "wavelab/estimates.hpp"

#include "estimates_detail.hpp"

#include "wavelab/cache.hpp"
#include "wavelab/freekernel.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace wavelab {

void LabSetup::validate() const {
  if (n < 2) throw DomainError("LabSetup: dimension n must be at least 2");
  grid.validate();
  potential.validate(n);
  phi.validate();
}

LabContext make_context(const LabSetup& setup, const std::string& cache_dir) {
  setup.validate();
  LabContext ctx;
  ctx.setup = setup;
  ctx.op0 = build_G0(setup.grid, setup.n);
  ctx.op = build_G(setup.grid, setup.n, setup.potential);
  ctx.e0 = cached_decompose(ctx.op0, cache_dir);
  if (setup.potential.c == 0.0)
    ctx.e = ctx.e0;
  else
    ctx.e = cached_decompose(ctx.op, cache_dir);
  return ctx;
}

bool EstimateResult::pass() const {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

bool EstimateResult::has(const std::string& name) const {
  for (const auto& r : reports)
    if (r.name == name) return true;
  return false;
}

const DecayFitReport& EstimateResult::get(const std::string& name) const {
  for (const auto& r : reports)
    if (r.name == name) return r;
  throw std::out_of_range("EstimateResult: no report named '" + name + "'");
}

using detail::fit;
using detail::num;

namespace {

// ---------------------------------------------------------------------------
// free kernel scans

struct SigmaProfile {
  std::vector<double> sigma, absK;
};

std::mutex g_kernel_mutex;
std::map<std::string, SigmaProfile> g_kernel_memo;

const SigmaProfile& sigma_profile(int n, const BumpProfile& phi, double h, double t, double step, double margin) {
  std::ostringstream key;
  key.precision(17);
  key << n << '|' << phi.describe() << '|' << h << '|' << t << '|' << step << '|' << margin;
  {
    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    auto it = g_kernel_memo.find(key.str());
    if (it != g_kernel_memo.end()) return it->second;
  }
  SigmaProfile p;
  const double ds = step * h;
  const double top = std::abs(t) + margin * h;
  for (int k = 1; k * ds <= top; ++k) {
    double s = k * ds;
    p.sigma.push_back(s);
    p.absK.push_back(std::abs(eval_Kh(n, phi, h, s, t)));
  }
  std::lock_guard<std::mutex> lock(g_kernel_mutex);
  return g_kernel_memo.emplace(key.str(), std::move(p)).first->second;
}

}  // namespace

KernelSup kernel_sup(int n, const BumpProfile& phi, double h, double t, double s, double sigma_step,
                     double sigma_margin) {
  const SigmaProfile& p = sigma_profile(n, phi, h, t, sigma_step, sigma_margin);
  KernelSup best;
  for (size_t i = 0; i < p.sigma.size(); ++i) {
    double v = p.absK[i] * std::pow(p.sigma[i], 0.5 * (n - 1) - s);
    if (v > best.value) {
      best.value = v;
      best.argmax = p.sigma[i];
    }
  }
  return best;
}

double light_cone_integral(int n, const BumpProfile& phi, double h, double t) {
  const double top = 0.5 * std::abs(t);
  const int panels = std::max(8, static_cast<int>(std::ceil(top / (0.125 * h))));
  QuadRule q = composite_gauss(panels, 8, 0.0, top);
  double sum = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i)
    sum += q.w[i] * std::pow(q.x[i], n - 1) * std::abs(eval_Kh(n, phi, h, q.x[i], t));
  return std::pow(std::abs(t), 0.5 * (n - 1)) * sum;
}

TimeIntegral kernel_time_integral(int n, const BumpProfile& phi, double h, double sigma, double s, double t_max) {
  const int panels = std::max(8, static_cast<int>(std::ceil(t_max / (0.25 * h))));
  QuadRule q = composite_gauss(panels, 8, 0.0, t_max);
  double sum = 0.0, tail = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) {
    double t = q.x[i];
    double k = std::abs(eval_Kh(n, phi, h, sigma, t));
    double v = q.w[i] * std::pow(t, 2.0 * s) * k * k;
    sum += v;
    if (t > 0.9 * t_max) tail += v;
  }
  TimeIntegral out;
  out.value = 2.0 * sum;
  out.tail_share = sum > 0.0 ? tail / sum : 0.0;
  return out;
}

EstimateResult check_kernel_bounds(int n, const BumpProfile& phi, const KernelBoundsOptions& opt) {
  EstimateResult res;
  res.id = "2.7";
  res.title = "free kernel bounds";
  const double smax = 0.5 * (n - 1);
  const std::vector<double> s_set = {0.0, 0.25 * (n - 1), smax};

  // pointwise bound: t-decay at h = 1 and h-scaling at fixed t, per s
  for (double s : s_set) {
    std::vector<double> sup_t, sup_h;
    for (double t : opt.t_set) sup_t.push_back(kernel_sup(n, phi, 1.0, t, s, opt.sigma_step, opt.sigma_margin).value);
    for (double h : opt.h_set)
      sup_h.push_back(kernel_sup(n, phi, h, opt.h_scan_t, s, opt.sigma_step, opt.sigma_margin).value);
    res.reports.push_back(fit("2.7", "pointwise t-decay s=" + num(s), "t", opt.t_set, sup_t, -s, 0.2));
    res.reports.push_back(fit("2.7", "pointwise h-scaling s=" + num(s), "h", opt.h_set, sup_h, -0.5 * (n + 1), 0.3));
  }

  // time integral: sigma-scaling at h = 1 and h-scaling at fixed sigma
  for (double s : s_set) {
    std::vector<double> vals;
    double worst_tail = 0.0;
    for (double sg : opt.plancherel_sigmas) {
      TimeIntegral ti = kernel_time_integral(n, phi, 1.0, sg, s, 2.0 * sg + 40.0);
      vals.push_back(ti.value);
      worst_tail = std::max(worst_tail, ti.tail_share);
    }
    auto r = fit("2.8", "time integral sigma-scaling s=" + num(s), "sigma", opt.plancherel_sigmas, vals,
                 -(n - 1) + 2.0 * s, 0.3);
    r.note += (r.note.empty() ? "" : "; ") + std::string("truncated at 2 sigma + 40, largest tail share ") +
              num(worst_tail);
    res.reports.push_back(r);
  }
  {
    std::vector<double> vals;
    const double sg = opt.plancherel_h_sigma;
    for (double h : opt.h_set) vals.push_back(kernel_time_integral(n, phi, h, sg, 0.0, 2.0 * sg + 40.0 * h).value);
    res.reports.push_back(fit("2.8", "time integral h-scaling s=0", "h", opt.h_set, vals, -static_cast<double>(n), 0.3));
  }
  for (double sg : {1.0, 4.0}) {
    PlancherelResult p = plancherel_check(n, phi, 1.0, sg, 0);
    auto r = value_report("2.8", "plancherel cross-check sigma=" + num(sg), p.rel_gap, 0.01, Bound::at_most);
    r.note = "time side " + num(p.time_side) + ", frequency side " + num(p.lambda_side) + ", tail " +
             num(p.tail_estimate);
    res.reports.push_back(r);
  }

  // light-cone integral
  std::vector<double> lc;
  for (double t : opt.t_set) lc.push_back(light_cone_integral(n, phi, 1.0, t));
  res.reports.push_back(ratio_report("2.9", "light-cone integral", "t", opt.t_set, lc, opt.light_cone_cap));
  return res;
}

}  // namespace wavelab
