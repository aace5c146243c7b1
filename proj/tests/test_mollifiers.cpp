#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "lipsmooth/corpus.hpp"
#include "lipsmooth/mollifiers.hpp"
#include "lipsmooth/quadrature.hpp"

using namespace lipsmooth;

namespace {

Box box1(double lo, double hi) {
  Eigen::VectorXd l(1), u(1);
  l << lo;
  u << hi;
  return Box(l, u);
}

}  // namespace

TEST_CASE("theta_eval limits, symmetry point and refinement validation") {
  const ThetaBar tb = build_theta_bar(0.05);
  const double kappa = 800.0;
  CHECK(std::abs(theta_eval(tb, kappa, -10.0)) <= 1e-12);
  CHECK(std::abs(theta_eval(tb, kappa, 10.0) - 1.0) <= 1e-12);
  CHECK(theta_eval(tb, kappa, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(theta_eval(tb, 0.0, 0.5), ParameterError);

  // validation against a heavily refined wide-window rule (the Gaussian
  // tail beyond +-1.2 is below e^{-1000})
  const double a = std::sqrt(kappa / M_PI);
  for (double t : {0.1, 0.22, 0.5, 0.9}) {
    const double refined = integrate(
        [&](double s) { return tb.value(s) * a * std::exp(-kappa * (t - s) * (t - s)); },
        t - 1.2, t + 1.2, 4000);
    CHECK(theta_eval(tb, kappa, t) == doctest::Approx(refined).epsilon(1e-12));
  }
}

TEST_CASE("theta_complex_eval restriction to the real line and decay membership") {
  const double eps = 0.05;
  const ThetaBar tb = build_theta_bar(eps);
  for (double kappa : {650.0, 2000.0}) {
    for (double t : {-0.2, 0.05, 0.3, 0.5, 0.8, 1.2}) {
      const std::complex<double> v = theta_complex_eval(tb, kappa, {t, 0.0});
      CHECK(std::abs(v.imag()) <= 1e-13);
      CHECK(std::abs(v.real() - theta_eval(tb, kappa, t)) <= 1e-12);
    }
  }
  // membership in the analytic decay envelope at kappa = 1e4
  const double kappa = 1e4;
  const double envelope = std::sqrt(2.0) * std::exp(-3.5 * kappa * eps * eps) + 1e-12;
  CHECK(std::abs(theta_complex_eval(tb, kappa, {0.0, 0.0})) <= envelope);
  CHECK(std::abs(theta_complex_eval(tb, kappa, {0.0, eps})) <= envelope);
}

TEST_CASE("select_kappa seeds at the analytic bound and certifies") {
  const double eps = 0.05;
  const ThetaBar tb = build_theta_bar(eps);
  const double seed =
      (2.0 / (7.0 * eps * eps)) * std::log(std::sqrt(2.0) * 8.0 / eps);
  CHECK(seed == doctest::Approx(619.60).epsilon(1e-3));

  const Mollifier1D th1 = select_kappa(tb, 1);
  CHECK(th1.kappa() >= seed);
  // the doubling loop leaves kappa at seed * 2^k
  const double ratio = th1.kappa() / seed;
  const double log2r = std::log2(ratio);
  CHECK(std::abs(log2r - std::round(log2r)) <= 1e-12);

  const Certificate& cert = th1.certificate();
  CHECK(cert.all_pass());
  const PropertyCheck* dev = cert.find("sup_deviation_eps_2np2");
  REQUIRE(dev != nullptr);
  CHECK(dev->measured <= eps / 8.0);

  // kappa_n seeds increase with n
  double prev = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double s =
        (2.0 / (7.0 * eps * eps)) * std::log(std::sqrt(2.0) * std::ldexp(1.0, n + 2) / eps);
    CHECK(s > prev);
    prev = s;
  }

  CHECK_THROWS_AS(select_kappa(tb, 0), ParameterError);
  CHECK_THROWS_AS(select_kappa(tb, 6, 0), CertificationError);
}

TEST_CASE("certified theta_n tracks theta_bar uniformly") {
  const double eps = 0.05;
  const ThetaBar tb = build_theta_bar(eps);
  const Mollifier1D th2 = select_kappa(tb, 2);
  const double tol = eps / 16.0;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    CHECK(std::abs(th2.value(t) - tb.value(t)) <= tol);
  }
}

TEST_CASE("build_alpha closed form, tails and certificate") {
  const double eps = 0.05;
  const Mollifier1D alpha = build_alpha(eps);
  CHECK(alpha.kind() == Mollifier1D::Kind::alpha);
  CHECK(alpha.value(-10.0) <= 1e-12);
  CHECK(alpha.derivative(-10.0) <= 1e-12);
  CHECK(alpha.value(10.0) == doctest::Approx(10.0 - 2.0 * eps).epsilon(1e-9));

  // alpha'(t) is the one-sided Gaussian tail: check against the numeric
  // derivative of the closed-form value.
  for (double t : {0.0, eps, 2.0 * eps, 0.2, 1.0}) {
    const double h = 1e-6;
    const double fd = (alpha.value(t + h) - alpha.value(t - h)) / (2.0 * h);
    CHECK(alpha.derivative(t) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(alpha.derivative(eps) <= eps);
  CHECK(alpha.derivative(eps) ==
        doctest::Approx(0.5 * std::erfc(std::sqrt(alpha.kappa()) * eps)).epsilon(1e-13));

  const Certificate& cert = alpha.certificate();
  CHECK(cert.all_pass());
  CHECK(!cert.note.empty());

  // bracketing: max(0, t - 3 eps) <= alpha(t) <= max(0, t) + 1e-9
  for (int i = 0; i <= 400; ++i) {
    const double t = -10.0 + 20.0 * i / 400.0;
    CHECK(alpha.value(t) >= std::max(0.0, t - 3.0 * eps) - 1e-12);
    CHECK(alpha.value(t) <= std::max(0.0, t) + 1e-9);
  }
  CHECK_THROWS_AS(build_alpha(0.2), ParameterError);
}

TEST_CASE("gaussian_mollify preserves constants, affine interiors and bounds") {
  FunctionOracle lin{"lin", [](const Eigen::VectorXd& x) { return 0.7 * x[0] + 0.1; }, 0.7};
  GridFunction f = sample(lin, box1(-1.0, 1.0), {801});
  const double sigma = 0.02;
  GridFunction g = gaussian_mollify(f, sigma);
  // affine functions are fixed by the symmetric kernel away from the faces
  for (Eigen::Index k = 0; k < f.values.size(); ++k) {
    if (std::abs(f.node(k)[0]) <= 1.0 - 6.5 * sigma)
      CHECK(g.values[k] == doctest::Approx(f.values[k]).epsilon(1e-10));
  }
  GridFunction c = f;
  c.values.setConstant(2.5);
  GridFunction cm = gaussian_mollify(c, sigma);
  CHECK((cm.values - 2.5).abs().maxCoeff() <= 1e-12);
  CHECK(cm.values.minCoeff() >= c.values.minCoeff() - 1e-12);
  CHECK(cm.values.maxCoeff() <= c.values.maxCoeff() + 1e-12);

  CHECK_THROWS_AS(gaussian_mollify(f, 0.0), ParameterError);
  CHECK_THROWS_AS(gaussian_mollify(f, 1e-4, true), ResolutionError);
  CHECK_NOTHROW(gaussian_mollify(f, 1e-4, false));
}

TEST_CASE("gaussian_mollify second-moment identity on x^2/2") {
  FunctionOracle halfsq{"x2half", [](const Eigen::VectorXd& x) { return 0.5 * x[0] * x[0]; },
                        1.0};
  GridFunction f = sample(halfsq, box1(-1.0, 1.0), {4097});
  const double sigma = 0.05;
  GridFunction g = gaussian_mollify(f, sigma);
  const double K = 1.0, h = f.spacing(0);
  CHECK(std::abs(g.values[2048] - 0.00125) <= 2.0 * h * K * sigma);
}

TEST_CASE("mollification does not expand corpus Lipschitz estimates") {
  for (const auto& oracle : corpus(1, 31337)) {
    GridFunction f = sample(oracle, box1(-1.0, 1.0), {2049});
    const double lip_f = estimate_lipschitz(f);
    for (double sigma : {0.001, 0.01, 0.05}) {
      GridFunction g = gaussian_mollify(f, sigma);
      CHECK(estimate_lipschitz(g) <= lip_f + 1e-9);
      CHECK(g.values.minCoeff() >= f.values.minCoeff() - 1e-12);
      CHECK(g.values.maxCoeff() <= f.values.maxCoeff() + 1e-12);
    }
  }
}

TEST_CASE("3-d mollification keeps range and Lipschitz estimates") {
  const auto oracle = corpus_member(3, 2718, "dist_points");
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 1.0);
  GridFunction f = sample(oracle, Box(lo, hi), {33, 33, 33});
  const double lip_f = estimate_lipschitz(f);
  for (double sigma : {0.05, 0.2}) {
    GridFunction g = gaussian_mollify(f, sigma);
    CHECK(estimate_lipschitz(g) <= lip_f + 1e-9);
    CHECK(g.values.minCoeff() >= f.values.minCoeff() - 1e-12);
    CHECK(g.values.maxCoeff() <= f.values.maxCoeff() + 1e-12);
  }
}

TEST_CASE("select_sigma closed form and scaling") {
  const SigmaChoice one = select_sigma(0.05, 60.0, 1);
  CHECK(one.sigma == doctest::Approx(0.05 / 120.0).epsilon(1e-12));
  const SigmaChoice two = select_sigma(0.05, 60.0, 2);
  CHECK(two.sigma == doctest::Approx(0.05 / (120.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(two.sigma == doctest::Approx(2.95e-4).epsilon(1e-2));
  // quadrupling K halves the first term and quarters the second
  const SigmaChoice base = select_sigma(0.4, 1.0, 1);
  const SigmaChoice quad = select_sigma(0.4, 4.0, 1);
  CHECK(base.sigma == doctest::Approx(0.4 / 2.0).epsilon(1e-12));
  CHECK(quad.sigma == doctest::Approx(0.4 / 8.0).epsilon(1e-12));
  CHECK(std::sqrt(0.4 / 4.0) == doctest::Approx(0.5 * std::sqrt(0.4)).epsilon(1e-12));
  CHECK_THROWS_AS(select_sigma(-0.1, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(select_sigma(0.1, 1.0, 4), ParameterError);
}

TEST_CASE("theta values stay in [0,1] and certification re-runs deterministically") {
  const ThetaBar tb = build_theta_bar(0.05);
  const Mollifier1D a = select_kappa(tb, 1);
  const Mollifier1D b = select_kappa(tb, 1);
  CHECK(a.kappa() == b.kappa());
  REQUIRE(a.certificate().checks.size() == b.certificate().checks.size());
  for (std::size_t i = 0; i < a.certificate().checks.size(); ++i) {
    CHECK(a.certificate().checks[i].measured == b.certificate().checks[i].measured);
    CHECK(a.certificate().checks[i].margin == b.certificate().checks[i].margin);
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double v = a.value(u(rng));
    CHECK(v >= -1e-13);
    CHECK(v <= 1.0 + 1e-13);
  }
}

TEST_CASE("theta table reproduces direct quadrature") {
  const ThetaBar tb = build_theta_bar(0.05);
  const Mollifier1D th1 = select_kappa(tb, 1);
  const ThetaTable table(th1);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng);
    worst = std::max(worst, std::abs(table(t) - th1.value(t)));
  }
  CHECK(worst <= 1e-8);
}
