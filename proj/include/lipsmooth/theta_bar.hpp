#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lipsmooth/errors.hpp"

namespace lipsmooth {

/// One verified property of a mollifier: what was measured, the bound it
/// was checked against, and the margin (bound - measured, or the raw
/// positivity measure for strictness checks).
struct PropertyCheck {
  std::string property;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct Certificate {
  std::vector<PropertyCheck> checks;
  std::string note;  // free-form annotations, e.g. known property caveats

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  const PropertyCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.property == name) return &c;
    return nullptr;
  }
};

/// Cubic Hermite interpolation table on a uniform lattice; exact values and
/// derivatives at the nodes, clamped continuation outside.
class UniformHermiteTable {
public:
  UniformHermiteTable() = default;
  UniformHermiteTable(double x0, double dx, Eigen::ArrayXd values, Eigen::ArrayXd derivs,
                      double left_value, double right_value)
      : x0_(x0), dx_(dx), values_(std::move(values)), derivs_(std::move(derivs)),
        left_(left_value), right_(right_value) {}

  double operator()(double x) const {
    const Eigen::Index n = values_.size();
    if (x <= x0_) return left_;
    const double upper = x0_ + dx_ * static_cast<double>(n - 1);
    if (x >= upper) return right_;
    const double s = (x - x0_) / dx_;
    Eigen::Index i = static_cast<Eigen::Index>(s);
    if (i > n - 2) i = n - 2;
    const double u = s - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * values_[i] + (u3 - 2.0 * u2 + u) * dx_ * derivs_[i] +
           (-2.0 * u3 + 3.0 * u2) * values_[i + 1] + (u3 - u2) * dx_ * derivs_[i + 1];
  }

private:
  double x0_ = 0.0;
  double dx_ = 1.0;
  Eigen::ArrayXd values_;
  Eigen::ArrayXd derivs_;
  double left_ = 0.0;
  double right_ = 0.0;
};

/// Base transition function: a linear ramp with knees at 4.5 eps and
/// 1 - 4.5 eps, convolved with a compactly supported C-infinity bump of
/// radius eps/2 and unit mass. Exact zero set (-inf, 4 eps], exact one set
/// [1 - 4 eps, inf), strictly increasing in between, slope 1/(1 - 9 eps).
class ThetaBar {
public:
  explicit ThetaBar(double eps);

  double eps() const { return eps_; }
  double bump_radius() const { return radius_; }
  double ramp_slope() const { return slope_; }
  double knee_lo() const { return knee_lo_; }
  double knee_hi() const { return knee_hi_; }

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  /// Density of the mollifying bump at offset x (zero outside [-R, R]).
  double bump(double x) const;
  /// sup |theta_bar''| = slope * bump(0); used for curvature certificates.
  double second_derivative_max() const { return slope_ * bump_peak_; }

  const Certificate& certificate() const { return certificate_; }

private:
  friend ThetaBar build_theta_bar(double eps);

  double eps_ = 0.0;
  double radius_ = 0.0;    // bump support radius eps/2
  double knee_lo_ = 0.0;   // 4.5 eps
  double knee_hi_ = 0.0;   // 1 - 4.5 eps
  double slope_ = 0.0;     // 1/(1 - 9 eps)
  double bump_norm_ = 0.0; // integral of the unnormalized bump profile
  double bump_peak_ = 0.0;
  UniformHermiteTable cdf_;     // Bc(x) = int_{-R}^{x} b
  UniformHermiteTable moment_;  // M1(x) = int_{-R}^{x} w b(w) dw
  Certificate certificate_;
};

/// Builds theta_bar for eps in (0, 1/16) and re-verifies its five properties
/// numerically on a 10^4-point grid; the result carries the measured margins.
ThetaBar build_theta_bar(double eps);

}  // namespace lipsmooth
