#include <doctest.h>

#include "lipsmooth/quadrature.hpp"
#include "lipsmooth/theta_bar.hpp"

using namespace lipsmooth;

TEST_CASE("theta_bar exact flats and midpoint symmetry") {
  for (double eps : {0.02, 0.05}) {
    ThetaBar tb = build_theta_bar(eps);
    CHECK(tb.value(0.0) == 0.0);
    CHECK(tb.value(4.0 * eps) == 0.0);
    CHECK(tb.value(-3.0) == 0.0);
    CHECK(tb.value(1.0) == 1.0);
    CHECK(tb.value(1.0 - 4.0 * eps) == 1.0);
    CHECK(tb.value(5.0) == 1.0);
    CHECK(tb.value(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    // symmetry about 1/2
    for (double t : {0.21, 0.3, 0.45, 0.6}) {
      CHECK(tb.value(t) + tb.value(1.0 - t) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("theta_bar certificate margins are positive") {
  for (double eps : {0.02, 0.05}) {
    const ThetaBar tb = build_theta_bar(eps);
    const Certificate& cert = tb.certificate();
    CHECK(cert.checks.size() == 5);
    for (const auto& c : cert.checks) {
      CHECK_MESSAGE(c.pass, c.property, " at eps=", eps);
      CHECK_MESSAGE(c.margin > 0.0, c.property, " margin at eps=", eps);
    }
  }
  CHECK_THROWS_AS(build_theta_bar(0.0), ParameterError);
  CHECK_THROWS_AS(build_theta_bar(1.0 / 16.0), ParameterError);
}

TEST_CASE("theta_bar derivative is consistent with finite differences") {
  const ThetaBar tb = build_theta_bar(0.05);
  const double h = 1e-6;
  for (double t : {0.1, 0.2, 0.22, 0.35, 0.5, 0.7, 0.78, 0.9}) {
    const double fd = (tb.value(t + h) - tb.value(t - h)) / (2.0 * h);
    CHECK(tb.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(tb.derivative(0.5) == doctest::Approx(tb.ramp_slope()).epsilon(1e-12));
  CHECK(tb.derivative(0.0) == 0.0);
  CHECK(tb.derivative(1.0) == 0.0);
}

TEST_CASE("theta_bar value agrees with direct quadrature of the ramp-bump form") {
  const double eps = 0.05;
  const ThetaBar tb = build_theta_bar(eps);
  const double R = tb.bump_radius();
  const double slope = tb.ramp_slope();
  auto ramp = [&](double x) {
    return std::clamp((x - 4.5 * eps) * slope, 0.0, 1.0);
  };
  for (double t : {0.15, 0.2, 0.24, 0.3, 0.5, 0.77, 0.83}) {
    // split the reference integral at the ramp kinks so every Gauss panel
    // sees a smooth integrand
    std::vector<double> cuts{-R, R};
    for (double kink : {t - 4.5 * eps, t - (1.0 - 4.5 * eps)})
      if (kink > -R && kink < R) cuts.push_back(kink);
    std::sort(cuts.begin(), cuts.end());
    double direct = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      direct += integrate([&](double w) { return ramp(t - w) * tb.bump(w); }, cuts[i],
                          cuts[i + 1], 48);
    CHECK(tb.value(t) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("gauss rule integrates polynomials and the normal density") {
  // degree-31 exactness check on a few monomials
  const double i30 = integrate([](double x) { return std::pow(x, 30); }, -1.0, 1.0, 1);
  CHECK(i30 == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
  const double gauss =
      integrate([](double x) { return std::exp(-0.5 * x * x); }, -8.0, 8.0, 16);
  CHECK(gauss == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-13));
}
