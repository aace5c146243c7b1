#include "lipsmooth/theta_bar.hpp"

#include <cmath>

#include "lipsmooth/quadrature.hpp"

namespace lipsmooth {

namespace {

// Unnormalized bump profile on [-1, 1].
double bump_profile(double u) {
  const double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w);
}

constexpr Eigen::Index kBumpTableIntervals = 4096;

}  // namespace

ThetaBar::ThetaBar(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !(eps < 1.0 / 16.0))
    throw ParameterError("theta_bar: epsilon must lie in (0, 1/16)");
  radius_ = 0.5 * eps;
  knee_lo_ = 4.5 * eps;
  knee_hi_ = 1.0 - 4.5 * eps;
  slope_ = 1.0 / (1.0 - 9.0 * eps);

  // Cumulative tables of the bump density and its first moment over
  // [-R, R]; node derivatives are the exact integrands, so the cubic
  // Hermite interpolant is accurate to ~1e-14 at this resolution.
  const Eigen::Index n = kBumpTableIntervals + 1;
  const double r = radius_;
  const double dx = 2.0 * r / static_cast<double>(kBumpTableIntervals);
  Eigen::ArrayXd raw_cdf(n), raw_m1(n);
  raw_cdf[0] = 0.0;
  raw_m1[0] = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double a = -r + dx * static_cast<double>(i - 1);
    const double b = -r + dx * static_cast<double>(i);
    raw_cdf[i] = raw_cdf[i - 1] +
                 integrate([&](double x) { return bump_profile(x / r); }, a, b, 1);
    raw_m1[i] = raw_m1[i - 1] +
                integrate([&](double x) { return x * bump_profile(x / r); }, a, b, 1);
  }
  bump_norm_ = raw_cdf[n - 1];
  bump_peak_ = bump_profile(0.0) / bump_norm_;

  Eigen::ArrayXd cdf_vals = raw_cdf / bump_norm_;
  Eigen::ArrayXd m1_vals = raw_m1 / bump_norm_;
  Eigen::ArrayXd cdf_derivs(n), m1_derivs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = -r + dx * static_cast<double>(i);
    const double b = bump_profile(x / r) / bump_norm_;
    cdf_derivs[i] = b;
    m1_derivs[i] = x * b;
  }
  const double m1_total = m1_vals[n - 1];
  cdf_ = UniformHermiteTable(-r, dx, std::move(cdf_vals), std::move(cdf_derivs), 0.0, 1.0);
  moment_ = UniformHermiteTable(-r, dx, std::move(m1_vals), std::move(m1_derivs), 0.0, m1_total);
}

double ThetaBar::bump(double x) const { return bump_profile(x / radius_) / bump_norm_; }

double ThetaBar::value(double t) const {
  // theta_bar(t) = int r(t - w) b(w) dw with r the clamped ramp. The flat
  // r = 1 part contributes Bc(t - knee_hi); the linear part reduces to the
  // bump CDF and partial first moment.
  const double w1 = t - knee_hi_;
  const double w2 = t - knee_lo_;
  if (w2 <= -radius_) return 0.0;
  if (w1 >= radius_) return 1.0;
  const double flat = cdf_(w1);
  const double mass = cdf_(w2) - cdf_(w1);
  const double mom = moment_(w2) - moment_(w1);
  double v = flat + slope_ * ((t - knee_lo_) * mass - mom);
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

double ThetaBar::derivative(double t) const {
  const double d = slope_ * (cdf_(t - knee_lo_) - cdf_(t - knee_hi_));
  return d > 0.0 ? d : 0.0;
}

double ThetaBar::second_derivative(double t) const {
  return slope_ * (bump(t - knee_lo_) - bump(t - knee_hi_));
}

ThetaBar build_theta_bar(double eps) {
  ThetaBar tb(eps);

  const int grid_n = 10000;
  const double lo = -0.25, hi = 1.25;
  const double zero_edge = 4.0 * eps;
  const double one_edge = 1.0 - 4.0 * eps;
  const double lip_bound = 1.0 / (1.0 - 10.0 * eps);

  Eigen::ArrayXd ts(grid_n + 1), vs(grid_n + 1), cs(grid_n + 1);
  for (int i = 0; i <= grid_n; ++i) {
    ts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_n);
    vs[i] = tb.value(ts[i]);
    // 1 - theta_bar(t) = theta_bar(1 - t) exactly (the construction is
    // symmetric about 1/2); the mirrored form stays representable where
    // 1 - v would round to zero.
    cs[i] = tb.value(1.0 - ts[i]);
  }

  // Strictness is measured one grid step inside the transition: at the set
  // edges the analytically positive values sit below the double-precision
  // floor (about e^{-R/2 delta}).
  const double band = 2.0 * (hi - lo) / static_cast<double>(grid_n);

  double zero_violation = 0.0, pos_min = 1.0;
  double one_violation = 0.0, below_one_min = 1.0;
  double inc_min = 1.0, flat_violation = 0.0;
  double dev_max = 0.0;
  double slope_max = 0.0;
  for (int i = 0; i <= grid_n; ++i) {
    const double t = ts[i], v = vs[i];
    if (t <= zero_edge) zero_violation = std::max(zero_violation, std::abs(v));
    if (t > zero_edge + band && t < one_edge - band) {
      pos_min = std::min(pos_min, v);
      below_one_min = std::min(below_one_min, cs[i]);
    }
    if (t >= one_edge + band) one_violation = std::max(one_violation, std::abs(v - 1.0));
    if (t >= 0.0 && t <= 1.0) dev_max = std::max(dev_max, std::abs(v - t));
    if (i > 0) {
      const double diff = vs[i] - vs[i - 1];
      slope_max = std::max(slope_max, std::abs(diff) / (ts[i] - ts[i - 1]));
      if (ts[i - 1] > zero_edge + band && ts[i] < one_edge - band) {
        // past the midpoint measure the increase on the mirrored side,
        // where it is representable
        const double inc = (ts[i] <= 0.5) ? diff : cs[i - 1] - cs[i];
        inc_min = std::min(inc_min, inc);
      }
      if (ts[i] <= zero_edge || ts[i - 1] >= one_edge + band)
        flat_violation = std::max(flat_violation, std::abs(diff));
    }
  }
  slope_max = std::max(slope_max, tb.derivative(0.5));

  Certificate cert;
  cert.checks.push_back({"zero_iff_below_4eps", zero_violation, 0.0,
                         (zero_violation == 0.0) ? pos_min : -zero_violation,
                         zero_violation == 0.0 && pos_min > 0.0});
  cert.checks.push_back({"one_iff_above_1m4eps", one_violation, 0.0,
                         (one_violation == 0.0) ? below_one_min : -one_violation,
                         one_violation == 0.0 && below_one_min > 0.0});
  cert.checks.push_back({"strictly_increasing_inside", flat_violation, 0.0, inc_min,
                         flat_violation == 0.0 && inc_min > 0.0});
  cert.checks.push_back({"identity_deviation_5eps", dev_max, 5.0 * eps, 5.0 * eps - dev_max,
                         dev_max <= 5.0 * eps});
  cert.checks.push_back({"lipschitz_1_over_1m10eps", slope_max, lip_bound,
                         lip_bound - slope_max, slope_max <= lip_bound});
  tb.certificate_ = cert;
  if (!cert.all_pass()) {
    std::string failed;
    for (const auto& c : cert.checks)
      if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.property;
    throw CertificationError("theta_bar certification failed: " + failed);
  }
  return tb;
}

}  // namespace lipsmooth
