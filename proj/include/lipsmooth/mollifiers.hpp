#pragma once

#include <complex>
#include <memory>

#include "lipsmooth/grid_function.hpp"
#include "lipsmooth/theta_bar.hpp"

namespace lipsmooth {

/// theta_kappa(t) = a_kappa * int theta_bar(s) exp(-kappa (t-s)^2) ds with
/// a_kappa = sqrt(kappa/pi). Quadrature runs over the transition window
/// |s - t| <= 10/sqrt(kappa); where theta_bar is constant 1 the Gaussian
/// tail is added in closed form (erfc). Absolute error <= 1e-12.
double theta_eval(const ThetaBar& theta_bar, double kappa, double t);

/// Same transform at a complex point. The integration window widens by
/// |Im z| so the truncated mass stays below e^{-100} after the e^{kappa v^2}
/// modulus factor.
std::complex<double> theta_complex_eval(const ThetaBar& theta_bar, double kappa,
                                        std::complex<double> z);

/// theta_kappa'(t) = a_kappa * int theta_bar'(s) exp(-kappa (t-s)^2) ds
/// (integration by parts; theta_bar' has compact support).
double theta_derivative_eval(const ThetaBar& theta_bar, double kappa, double t);

/// A certified scalar transition function: either theta_n (Gaussian-smoothed
/// theta_bar at scale kappa_n) or alpha (smoothed positive-part shift used
/// by the sign split). Usable only once its certificate passed.
class Mollifier1D {
public:
  enum class Kind { theta_n, alpha };

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double kappa() const { return kappa_; }
  int n() const { return n_; }
  const Certificate& certificate() const { return certificate_; }
  const ThetaBar& theta_bar() const { return *theta_bar_; }

  double value(double t) const;
  double derivative(double t) const;

private:
  friend Mollifier1D select_kappa(const ThetaBar& theta_bar, int n, int max_doublings);
  friend Mollifier1D build_alpha(double epsilon);

  Kind kind_ = Kind::theta_n;
  double epsilon_ = 0.0;
  double kappa_ = 0.0;
  int n_ = 0;
  Certificate certificate_;
  std::shared_ptr<const ThetaBar> theta_bar_;  // theta_n kind only
};

/// Chooses kappa_n for theta_n: seeds kappa at the analytic bound
/// (2/(7 eps^2)) ln(sqrt(2) 2^{n+2} / eps) obtained by inverting the decay
/// estimate sqrt(2) e^{-7 kappa eps^2 / 2}, then doubles until all four
/// required properties certify:
///  1. |theta~_n(z)| <= eps/2^{n+2} at 64 points with |z| = eps
///  2. Lip(theta_n) <= 1/(1 - 10 eps)
///  3. sup |theta_n - theta_bar| <= eps/2^{n+2}
///  4. |theta_n'(t)| <= eps/2^{n+2} for t in (-inf, 2 eps] u [1-2 eps, inf)
/// The certificate additionally records that the quadrature values at the
/// 64 complex points stay inside the analytic decay envelope
/// sqrt(2) e^{-7 kappa eps^2 / 2}. Throws CertificationError after
/// max_doublings.
Mollifier1D select_kappa(const ThetaBar& theta_bar, int n, int max_doublings = 40);

/// alpha(t) = a_kappa * int max(s - 2 eps, 0) exp(-kappa (t-s)^2) ds, in
/// closed form via erfc; alpha'(t) is the one-sided Gaussian tail mass.
/// kappa doubles from 1/eps^2 until: |alpha(t) - t| <= 3 eps on [0, 10],
/// alpha' <= 1, alpha'(t) <= eps for t <= eps, and
/// alpha(t) <= max(t, 0) + 1e-9 on the test window.
/// The idealized small-derivative property is often quoted with threshold
/// 3 eps, which no mollification of max(s - 2 eps, 0) can satisfy at
/// t = 3 eps; the certificate records the t <= eps form actually used and
/// notes the mismatch.
Mollifier1D build_alpha(double epsilon);

/// Separable discrete Gaussian convolution with a normalized kernel
/// truncated at radius 6 sigma; out-of-box samples clamp to the boundary
/// (metric projection, so Lipschitz constants are preserved). sigma below
/// h/2 leaves the kernel under-resolved: error when strict, otherwise the
/// caller records a warning.
GridFunction gaussian_mollify(const GridFunction& f, double sigma, bool strict = false);

/// Mollification bandwidth for a C^{1,1} bound K in dimension d.
struct SigmaChoice {
  double sigma = 0.0;
  double K = 0.0;
};

/// sigma = min( sqrt(eps/(K d)), eps/(2 K sqrt(d)) ): the first term keeps
/// the value error (K/2) sigma^2 d below eps/2, the second the gradient
/// error K sigma sqrt(d) below eps/2.
SigmaChoice select_sigma(double epsilon, double K, int d);

/// Memoized evaluator for a certified theta_n: cubic Hermite interpolation
/// on a curvature-adapted lattice, clamped to the exact flats outside the
/// transition. Build-time self check against direct quadrature at 10^3
/// seeded points enforces the 1e-8 interpolation budget.
class ThetaTable {
public:
  explicit ThetaTable(const Mollifier1D& theta);

  double operator()(double t) const;
  Eigen::ArrayXd map(const Eigen::ArrayXd& ts) const;

private:
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> vals_;
  std::vector<double> ders_;
};

}  // namespace lipsmooth
