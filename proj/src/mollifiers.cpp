#include "lipsmooth/mollifiers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lipsmooth/quadrature.hpp"

namespace lipsmooth {

namespace {

constexpr double kPi = 3.14159265358979323846;

int panel_count(double length, double panel_width) {
  if (length <= 0.0) return 0;
  const double n = std::ceil(length / panel_width);
  return static_cast<int>(std::min(n, 200000.0));
}

double real_panel_width(const ThetaBar& tb, double kappa) {
  return std::min(tb.bump_radius() / 4.0, 0.5 / std::sqrt(kappa));
}

}  // namespace

double theta_eval(const ThetaBar& tb, double kappa, double t) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ParameterError("theta_eval: kappa must be finite and > 0");
  const double a = std::sqrt(kappa / kPi);
  const double A = 4.0 * tb.eps();
  const double B = 1.0 - 4.0 * tb.eps();
  const double w = 10.0 / std::sqrt(kappa);

  const double lo = std::max(A, t - w);
  const double hi = std::min(B, t + w);
  double value = 0.0;
  if (lo < hi) {
    const int panels = panel_count(hi - lo, real_panel_width(tb, kappa));
    value = integrate(
        [&](double s) {
          const double d = t - s;
          return tb.value(s) * a * std::exp(-kappa * d * d);
        },
        lo, hi, panels);
  }
  // theta_bar == 1 on [B, inf): closed-form Gaussian tail.
  value += 0.5 * std::erfc(std::sqrt(kappa) * (B - t));
  return value;
}

std::complex<double> theta_complex_eval(const ThetaBar& tb, double kappa,
                                        std::complex<double> z) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ParameterError("theta_complex_eval: kappa must be finite and > 0");
  const double a = std::sqrt(kappa / kPi);
  const double A = 4.0 * tb.eps();
  const double u = z.real();
  const double v = z.imag();
  const double w = 10.0 / std::sqrt(kappa) + std::abs(v);

  // theta_bar vanishes below A and the kernel modulus is below e^{-100}
  // outside |s - u| <= w, so the integral over [max(A, u-w), u+w] carries
  // everything above 1e-12.
  const double lo = std::max(A, u - w);
  const double hi = u + w;
  if (!(lo < hi)) return {0.0, 0.0};
  double pw = real_panel_width(tb, kappa);
  if (v != 0.0) pw = std::min(pw, 4.0 / (kappa * std::abs(v)));
  const int panels = panel_count(hi - lo, pw);
  return integrate(
      [&](double s) -> std::complex<double> {
        const std::complex<double> d = z - s;
        return tb.value(s) * a * std::exp(-kappa * d * d);
      },
      lo, hi, panels);
}

double theta_derivative_eval(const ThetaBar& tb, double kappa, double t) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ParameterError("theta_derivative_eval: kappa must be finite and > 0");
  const double a = std::sqrt(kappa / kPi);
  const double A = 4.0 * tb.eps();
  const double B = 1.0 - 4.0 * tb.eps();
  const double w = 10.0 / std::sqrt(kappa);
  const double lo = std::max(A, t - w);
  const double hi = std::min(B, t + w);
  if (!(lo < hi)) return 0.0;
  const int panels = panel_count(hi - lo, real_panel_width(tb, kappa));
  return integrate(
      [&](double s) {
        const double d = t - s;
        return tb.derivative(s) * a * std::exp(-kappa * d * d);
      },
      lo, hi, panels);
}

namespace {

// Evaluation lattice for kappa certification: dense where theta_bar has
// curvature (the knee bands), coarse along the exactly-linear ramp, spot
// checks in the flats. The Gaussian corrections decay monotonically away
// from the bands, so the suprema live inside this lattice.
std::vector<double> certification_grid(const ThetaBar& tb, double kappa) {
  const double eps = tb.eps();
  const double R = tb.bump_radius();
  const double A = 4.0 * eps, B = 1.0 - 4.0 * eps;
  const double m = std::min(30.0 / std::sqrt(kappa), 0.35);
  const double step = std::min(R / 8.0, 0.5 / std::sqrt(kappa));

  std::vector<double> pts;
  auto add_range = [&pts](double lo, double hi, double dt) {
    for (double t = lo; t <= hi + 0.5 * dt; t += dt) pts.push_back(t);
  };

  const double b1_lo = A - m, b1_hi = 5.0 * eps + m;
  const double b2_lo = 1.0 - 5.0 * eps - m, b2_hi = B + m;
  if (b1_hi >= b2_lo) {
    add_range(b1_lo, b2_hi, step);
  } else {
    add_range(b1_lo, b1_hi, step);
    add_range(b1_hi, b2_lo, (b2_lo - b1_hi) / 64.0);
    add_range(b2_lo, b2_hi, step);
  }
  for (double t : {A - 2.0 * m, A - 4.0 * m, -0.1, -0.5, B + 2.0 * m, B + 4.0 * m, 1.1, 1.5,
                   0.0, 0.5, 1.0, 2.0 * eps, 1.0 - 2.0 * eps})
    pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

double Mollifier1D::value(double t) const {
  if (kind_ == Kind::theta_n) return theta_eval(*theta_bar_, kappa_, t);
  // alpha in closed form: (t - 2 eps) Phi + gaussian term.
  const double c = t - 2.0 * epsilon_;
  const double phi = 0.5 * std::erfc(-std::sqrt(kappa_) * c);
  const double g = std::exp(-kappa_ * c * c) / (2.0 * std::sqrt(kPi * kappa_));
  const double v = c * phi + g;
  return v > 0.0 ? v : 0.0;
}

double Mollifier1D::derivative(double t) const {
  if (kind_ == Kind::theta_n) return theta_derivative_eval(*theta_bar_, kappa_, t);
  // alpha'(t) = one-sided Gaussian tail mass of [2 eps, inf) seen from t.
  return 0.5 * std::erfc(std::sqrt(kappa_) * (2.0 * epsilon_ - t));
}

Mollifier1D select_kappa(const ThetaBar& theta_bar, int n, int max_doublings) {
  if (n < 1) throw ParameterError("select_kappa: n must be >= 1");
  const double eps = theta_bar.eps();
  const double tol = std::ldexp(eps, -(n + 2));  // eps / 2^{n+2}
  const double lip_bound = 1.0 / (1.0 - 10.0 * eps);

  // Analytic seed from inverting sqrt(2) e^{-7 kappa eps^2/2} <= eps/2^{n+2}.
  const double seed =
      (2.0 / (7.0 * eps * eps)) * std::log(std::sqrt(2.0) * std::ldexp(1.0, n + 2) / eps);

  double kappa = seed;
  Certificate last_cert;
  for (int iter = 0; iter <= max_doublings; ++iter) {
    Certificate cert;

    // (1) complex decay at 64 points on |z| = eps; the same quadrature
    // values must also sit inside the analytic envelope
    // sqrt(2) e^{-7 kappa eps^2/2}.
    double max_mod = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / 64.0;
      const std::complex<double> z(eps * std::cos(phi), eps * std::sin(phi));
      max_mod = std::max(max_mod, std::abs(theta_complex_eval(theta_bar, kappa, z)));
    }
    const double envelope = std::sqrt(2.0) * std::exp(-3.5 * kappa * eps * eps) + 1e-12;
    cert.checks.push_back(
        {"complex_decay_eps_2np2", max_mod, tol, tol - max_mod, max_mod <= tol});
    cert.checks.push_back({"complex_analytic_envelope", max_mod, envelope,
                           envelope - max_mod, max_mod <= envelope});

    // (2) Lipschitz and (3) sup deviation share the lattice.
    const std::vector<double> grid = certification_grid(theta_bar, kappa);
    double max_der = 0.0, max_dev = 0.0;
    for (double t : grid) {
      max_der = std::max(max_der, theta_derivative_eval(theta_bar, kappa, t));
      max_dev = std::max(max_dev,
                         std::abs(theta_eval(theta_bar, kappa, t) - theta_bar.value(t)));
    }
    cert.checks.push_back(
        {"lipschitz_1_over_1m10eps", max_der, lip_bound, lip_bound - max_der,
         max_der <= lip_bound});
    cert.checks.push_back(
        {"sup_deviation_eps_2np2", max_dev, tol, tol - max_dev, max_dev <= tol});

    // (4) flat derivative on (-inf, 2 eps] u [1 - 2 eps, inf); the
    // derivative is monotone toward the transition, so the suprema sit at
    // the thresholds.
    double max_flat = 0.0;
    const double reach = 2.0 / std::sqrt(kappa);
    for (int k = 0; k < 16; ++k) {
      max_flat = std::max(max_flat, theta_derivative_eval(theta_bar, kappa,
                                                          2.0 * eps - reach * k));
      max_flat = std::max(max_flat, theta_derivative_eval(theta_bar, kappa,
                                                          1.0 - 2.0 * eps + reach * k));
    }
    for (double t : {-2.0, -1.0, -0.5, 0.0, eps, 1.5, 2.0, 3.0})
      max_flat = std::max(max_flat, theta_derivative_eval(theta_bar, kappa, t));
    cert.checks.push_back({"flat_derivative_eps_2np2", max_flat, tol, tol - max_flat,
                           max_flat <= tol});

    if (cert.all_pass()) {
      Mollifier1D m;
      m.kind_ = Mollifier1D::Kind::theta_n;
      m.epsilon_ = eps;
      m.kappa_ = kappa;
      m.n_ = n;
      m.certificate_ = std::move(cert);
      m.theta_bar_ = std::make_shared<ThetaBar>(theta_bar);
      return m;
    }
    last_cert = std::move(cert);
    kappa *= 2.0;
  }

  std::ostringstream os;
  os << "select_kappa: theta_" << n << " failed to certify within " << max_doublings
     << " doublings (seed kappa " << seed << "); failing:";
  for (const auto& c : last_cert.checks)
    if (!c.pass) os << " " << c.property << " (measured " << c.measured << " vs bound "
                    << c.bound << ")";
  throw CertificationError(os.str());
}

Mollifier1D build_alpha(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / 16.0))
    throw ParameterError("build_alpha: epsilon must lie in (0, 1/16)");

  Mollifier1D alpha;
  alpha.kind_ = Mollifier1D::Kind::alpha;
  alpha.epsilon_ = epsilon;
  alpha.n_ = 0;

  double kappa = 1.0 / (epsilon * epsilon);
  Certificate last_cert;
  for (int iter = 0; iter <= 40; ++iter) {
    alpha.kappa_ = kappa;
    Certificate cert;

    // (a) |alpha(t) - t| <= 3 eps on [0, 10]; beyond, the deviation
    // decreases monotonically toward 2 eps.
    double dev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = 10.0 * static_cast<double>(i) / 2000.0;
      dev = std::max(dev, std::abs(alpha.value(t) - t));
    }
    cert.checks.push_back({"identity_deviation_3eps", dev, 3.0 * epsilon,
                           3.0 * epsilon - dev, dev <= 3.0 * epsilon});

    // (b) Lip(alpha) = 1: alpha' is an erfc tail, <= 1 identically.
    double dmax = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = -10.0 + 20.0 * static_cast<double>(i) / 2000.0;
      dmax = std::max(dmax, alpha.derivative(t));
    }
    cert.checks.push_back({"derivative_at_most_1", dmax, 1.0, 1.0 - dmax, dmax <= 1.0});

    // (c) alpha'(t) <= eps for t <= eps (alpha' is increasing, so the
    // supremum is at t = eps). The threshold cannot be pushed to 3 eps:
    // alpha'(3 eps) -> 1 as kappa grows.
    const double small_der = alpha.derivative(epsilon);
    cert.checks.push_back({"small_derivative_below_eps", small_der, epsilon,
                           epsilon - small_der, small_der <= epsilon});

    // (d) alpha(t) <= max(t, 0) + 1e-9 on [-10, 10].
    double above = -1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = -10.0 + 20.0 * static_cast<double>(i) / 2000.0;
      above = std::max(above, alpha.value(t) - std::max(t, 0.0));
    }
    cert.checks.push_back({"upper_bracket_1e9", above, 1e-9, 1e-9 - above, above <= 1e-9});

    cert.note =
        "the idealized form |alpha'(t)| <= eps for t <= 3 eps is unsatisfiable at "
        "t = 3 eps for any mollified positive-part shift; certified for t <= eps, "
        "the only range the sign split evaluates it on";
    if (cert.all_pass()) {
      alpha.certificate_ = std::move(cert);
      return alpha;
    }
    last_cert = std::move(cert);
    kappa *= 2.0;
  }

  std::ostringstream os;
  os << "build_alpha: failed to certify within 40 doublings; failing:";
  for (const auto& c : last_cert.checks)
    if (!c.pass) os << " " << c.property << " (measured " << c.measured << ")";
  throw CertificationError(os.str());
}

GridFunction gaussian_mollify(const GridFunction& f, double sigma, bool strict) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ParameterError("gaussian_mollify: sigma must be finite and > 0");
  f.validate();

  if (strict) {
    for (int axis = 0; axis < f.dim(); ++axis) {
      if (sigma < 0.5 * f.spacing(axis)) {
        std::vector<Eigen::Index> required(static_cast<std::size_t>(f.dim()));
        for (int i = 0; i < f.dim(); ++i)
          required[static_cast<std::size_t>(i)] =
              static_cast<Eigen::Index>(std::ceil(f.box.length(i) / (2.0 * sigma))) + 1;
        std::ostringstream os;
        os << "gaussian_mollify: sigma " << sigma << " is below h/2 on axis " << axis
           << " (h = " << f.spacing(axis) << "); kernel under-resolved";
        throw ResolutionError(os.str(), required);
      }
    }
  }

  GridFunction g = f;
  const auto strides = g.strides();
  for (int axis = 0; axis < f.dim(); ++axis) {
    const double h = g.spacing(axis);
    const Eigen::Index count = g.shape[static_cast<std::size_t>(axis)];
    Eigen::Index radius = static_cast<Eigen::Index>(std::ceil(6.0 * sigma / h));
    if (radius < 1) radius = 1;
    // Beyond this every tap clamps to a boundary sample anyway.
    radius = std::min(radius, 8 * (count - 1));

    Eigen::ArrayXd weights(2 * radius + 1);
    for (Eigen::Index j = -radius; j <= radius; ++j) {
      const double x = static_cast<double>(j) * h;
      weights[j + radius] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    weights /= weights.sum();

    const Eigen::Index stride = strides[static_cast<std::size_t>(axis)];
    const int d = g.dim();
    Eigen::ArrayXd line(count), out(count);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      if (idx[static_cast<std::size_t>(axis)] == 0) {
        Eigen::Index base = 0;
        for (int i = 0; i < d; ++i) base += idx[static_cast<std::size_t>(i)] * strides[static_cast<std::size_t>(i)];
        Eigen::Index p = base;
        for (Eigen::Index k = 0; k < count; ++k, p += stride) line[k] = g.values[p];
        for (Eigen::Index k = 0; k < count; ++k) {
          double acc = 0.0;
          for (Eigen::Index j = -radius; j <= radius; ++j) {
            Eigen::Index src = k - j;
            if (src < 0) src = 0;
            if (src > count - 1) src = count - 1;
            acc += weights[j + radius] * line[src];
          }
          out[k] = acc;
        }
        p = base;
        for (Eigen::Index k = 0; k < count; ++k, p += stride) g.values[p] = out[k];
      }
      int ax = d - 1;
      while (ax >= 0) {
        if (++idx[static_cast<std::size_t>(ax)] < g.shape[static_cast<std::size_t>(ax)]) break;
        idx[static_cast<std::size_t>(ax)] = 0;
        --ax;
      }
      if (ax < 0) break;
    }
  }
  return g;
}

SigmaChoice select_sigma(double epsilon, double K, int d) {
  if (!(epsilon > 0.0) || !(K > 0.0) || d < 1 || d > 3)
    throw ParameterError("select_sigma: epsilon, K must be > 0 and d in {1,2,3}");
  const double dd = static_cast<double>(d);
  SigmaChoice c;
  c.K = K;
  c.sigma = std::min(std::sqrt(epsilon / (K * dd)), epsilon / (2.0 * K * std::sqrt(dd)));
  return c;
}

ThetaTable::ThetaTable(const Mollifier1D& theta) {
  if (theta.kind() != Mollifier1D::Kind::theta_n)
    throw ParameterError("ThetaTable: requires a theta_n mollifier");
  const ThetaBar& tb = theta.theta_bar();
  const double kappa = theta.kappa();
  const double eps = tb.eps();
  const double R = tb.bump_radius();
  const double A = 4.0 * eps, B = 1.0 - 4.0 * eps;
  const double m = std::min(30.0 / std::sqrt(kappa), 0.35);

  // Node spacing from the curvature budget: cubic Hermite error is
  // delta^4 |theta''''| / 384 and |theta_kappa''''| <= |theta_bar''''|.
  double bdd_max = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -R + 2.0 * R * static_cast<double>(i) / 4000.0;
    const double dlt = R / 2000.0;
    const double dd = (tb.bump(std::min(x + dlt, R)) - 2.0 * tb.bump(x) +
                       tb.bump(std::max(x - dlt, -R))) /
                      (dlt * dlt);
    bdd_max = std::max(bdd_max, std::abs(dd));
  }
  const double theta4_max = std::max(tb.ramp_slope() * bdd_max, 1.0);
  const double delta = std::min(R / 4.0, std::pow(384.0 * 1e-8 / theta4_max, 0.25));

  auto add_range = [this](double lo, double hi, double dt) {
    for (double t = lo; t <= hi + 0.5 * dt; t += dt) xs_.push_back(t);
  };
  const double b1_lo = A - m, b1_hi = 5.0 * eps + m;
  const double b2_lo = 1.0 - 5.0 * eps - m, b2_hi = B + m;
  if (b1_hi >= b2_lo - delta) {
    add_range(b1_lo, b2_hi, delta);
  } else {
    add_range(b1_lo, b1_hi, delta);
    add_range(b1_hi + delta, b2_lo - delta, (b2_lo - b1_hi - 2 * delta) / 64.0);
    add_range(b2_lo, b2_hi, delta);
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());

  vals_.resize(xs_.size());
  ders_.resize(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    vals_[i] = theta_eval(tb, kappa, xs_[i]);
    ders_[i] = theta_derivative_eval(tb, kappa, xs_[i]);
  }
  lo_ = xs_.front();
  hi_ = xs_.back();
  if (std::abs(vals_.front()) > 1e-11 || std::abs(vals_.back() - 1.0) > 1e-11)
    throw CertificationError("ThetaTable: clamp values not settled at the lattice ends");

  // Interpolation budget check against direct quadrature.
  std::mt19937_64 rng(0x7ab1e5eedULL);
  std::uniform_real_distribution<double> dist(lo_ - 0.1, hi_ + 0.1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = dist(rng);
    worst = std::max(worst, std::abs((*this)(t)-theta_eval(tb, kappa, t)));
  }
  if (worst > 1e-8) {
    std::ostringstream os;
    os << "ThetaTable: interpolation error " << worst << " exceeds the 1e-8 budget";
    throw CertificationError(os.str());
  }
}

double ThetaTable::operator()(double t) const {
  if (t <= lo_) return 0.0;
  if (t >= hi_) return 1.0;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) return vals_.front();
  --i;
  if (i >= xs_.size() - 1) return vals_.back();
  const double hstep = xs_[i + 1] - xs_[i];
  const double u = (t - xs_[i]) / hstep;
  const double u2 = u * u, u3 = u2 * u;
  return (2.0 * u3 - 3.0 * u2 + 1.0) * vals_[i] + (u3 - 2.0 * u2 + u) * hstep * ders_[i] +
         (-2.0 * u3 + 3.0 * u2) * vals_[i + 1] + (u3 - u2) * hstep * ders_[i + 1];
}

Eigen::ArrayXd ThetaTable::map(const Eigen::ArrayXd& ts) const {
  Eigen::ArrayXd out(ts.size());
  for (Eigen::Index i = 0; i < ts.size(); ++i) out[i] = (*this)(ts[i]);
  return out;
}

}  // namespace lipsmooth
