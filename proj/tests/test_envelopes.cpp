#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "lipsmooth/corpus.hpp"
#include "lipsmooth/envelopes.hpp"

using namespace lipsmooth;

namespace {

Box box1(double lo, double hi) {
  Eigen::VectorXd l(1), u(1);
  l << lo;
  u << hi;
  return Box(l, u);
}

Box box2(double lo, double hi) {
  Eigen::VectorXd l(2), u(2);
  l << lo, lo;
  u << hi, hi;
  return Box(l, u);
}

GridFunction sample_abs(Eigen::Index n) {
  FunctionOracle absf{"abs", [](const Eigen::VectorXd& x) { return std::abs(x[0]); }, 1.0};
  return sample(absf, box1(-1.0, 1.0), {n});
}

}  // namespace

TEST_CASE("inf_conv_quadratic_1d on constants and a one-hot spike") {
  Eigen::ArrayXd c = Eigen::ArrayXd::Constant(17, 4.2);
  Eigen::ArrayXd out = inf_conv_quadratic_1d(c, 0.1, 0.7);
  CHECK((out - 4.2).abs().maxCoeff() == 0.0);

  // one-hot: parabola rooted at the hot index dominates near it
  const Eigen::Index n = 33, m = 12;
  const double big = 1e6;
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(n, big);
  v[m] = 0.0;
  out = inf_conv_quadratic_1d(v, 1.0, 0.5);  // (h(k-m))^2/(2*0.5) = (k-m)^2
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = static_cast<double>(k - m);
    CHECK(out[k] == doctest::Approx(std::min(big, d * d)).epsilon(1e-15));
  }

  CHECK_THROWS_AS(inf_conv_quadratic_1d(c, 0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(inf_conv_quadratic_1d(c, 0.1, -1.0), ParameterError);
}

TEST_CASE("inf_conv_quadratic_1d equals brute force on random grids") {
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> ul(0.05, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 2047);
    Eigen::ArrayXd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = u(rng);
    const double h = ul(rng) * 0.01;
    const double lambda = ul(rng);
    const Eigen::ArrayXd fast = inf_conv_quadratic_1d(v, h, lambda);
    const Eigen::ArrayXd brute = testing::brute_inf_conv_1d(v, h, lambda);
    CHECK((fast - brute).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("envelopes fix constants") {
  GridFunction c = GridFunction::zeros(box1(0.0, 1.0), {33});
  c.values.setConstant(4.25);
  CHECK((moreau_inf(c, 0.3).values == 4.25).all());
  CHECK((moreau_sup(c, 0.2).values == 4.25).all());
  CHECK((lasry_lions(c, EnvelopeParams{0.3, 0.15}).values == 4.25).all());
}

TEST_CASE("moreau_inf matches the Huber closed form for |x|") {
  GridFunction f = sample_abs(4097);
  const double lambda = 0.5;
  GridFunction g = moreau_inf(f, lambda);
  // x = 1: |x| - lambda/2 = 0.75; x = 0: 0
  CHECK(g.values[4096] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(g.values[2048] == doctest::Approx(0.0).epsilon(1e-12));
  for (Eigen::Index k = 0; k < f.values.size(); k += 97) {
    CHECK(g.values[k] ==
          doctest::Approx(testing::huber(f.node(k)[0], lambda)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(moreau_inf(f, 0.0), ParameterError);
}

TEST_CASE("moreau_inf equals brute force on a random 2-d grid") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridFunction f = GridFunction::zeros(box2(-1.0, 1.0), {64, 64});
  for (Eigen::Index k = 0; k < f.values.size(); ++k) f.values[k] = u(rng);
  const double lambda = 0.23;
  const GridFunction fast = moreau_inf(f, lambda);
  const GridFunction brute = testing::brute_moreau_inf(f, lambda);
  CHECK(sup_distance(fast, brute) <= 1e-12);
}

TEST_CASE("moreau_inf and lasry_lions match brute force on a random 3-d grid") {
  std::mt19937_64 rng(777777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 1.0);
  GridFunction f = GridFunction::zeros(Box(lo, hi), {17, 17, 17});
  for (Eigen::Index k = 0; k < f.values.size(); ++k) f.values[k] = u(rng);
  const double lambda = 0.4, mu = 0.2;
  CHECK(sup_distance(moreau_inf(f, lambda), testing::brute_moreau_inf(f, lambda)) <= 1e-12);
  CHECK(sup_distance(lasry_lions(f, EnvelopeParams{lambda, mu}),
                     testing::brute_lasry_lions(f, lambda, mu)) <= 1e-12);
}

TEST_CASE("moreau_sup raises |x| by mu/2 in the interior and is the exact dual") {
  GridFunction f = sample_abs(41);  // h = 0.05, mu = 5h lands on nodes
  const double mu = 0.25;
  GridFunction g = moreau_sup(f, mu);
  for (Eigen::Index k = 0; k < f.values.size(); ++k) {
    const double x = f.node(k)[0];
    if (std::abs(x) <= 1.0 - mu - 1e-12)
      CHECK(g.values[k] == doctest::Approx(std::abs(x) + mu / 2.0).epsilon(1e-12));
  }
  GridFunction neg = f;
  neg.values = -neg.values;
  GridFunction dual = moreau_inf(neg, mu);
  dual.values = -dual.values;
  CHECK((g.values - dual.values).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(moreau_sup(f, -0.1), ParameterError);
}

TEST_CASE("lasry_lions at the origin of |x| and against brute force") {
  GridFunction f = sample_abs(801);
  EnvelopeParams p{0.5, 0.25};
  GridFunction g = lasry_lions(f, p);
  CHECK(g.values[400] == doctest::Approx(0.0).epsilon(1e-12));

  GridFunction small = sample_abs(257);
  const GridFunction brute = testing::brute_lasry_lions(small, 0.5, 0.25);
  CHECK(sup_distance(lasry_lions(small, p), brute) <= 1e-12);

  CHECK_THROWS_AS(lasry_lions(f, EnvelopeParams{0.5, 0.5}), ParameterError);
  CHECK_THROWS_AS(lasry_lions(f, EnvelopeParams{0.5, 0.8}), ParameterError);
}

TEST_CASE("select_lambda closed form and scaling") {
  EnvelopeParams p = select_lambda(0.05, 1.0);
  CHECK(p.lambda == doctest::Approx(0.05 * 2.0 / 3.0).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(p.lambda / 2.0).epsilon(1e-15));
  EnvelopeParams q = select_lambda(0.05, 2.0);
  CHECK(q.lambda == doctest::Approx(p.lambda / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(select_lambda(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(select_lambda(0.1, 0.0), ParameterError);
}

TEST_CASE("sandwich, monotonicity and Lipschitz non-expansion on the corpus") {
  const Box b1 = box1(-1.0, 1.0);
  for (const auto& oracle : corpus(1, 424242)) {
    GridFunction f = sample(oracle, b1, {1025});
    const double lip_f = estimate_lipschitz(f);
    for (double lambda : {0.02, 0.1}) {
      GridFunction lower = moreau_inf(f, lambda);
      GridFunction upper = moreau_sup(f, lambda / 2.0);
      CHECK((lower.values <= f.values + 1e-12).all());
      CHECK((upper.values >= f.values - 1e-12).all());
      CHECK(estimate_lipschitz(lower) <= lip_f + 1e-9);
      CHECK(estimate_lipschitz(upper) <= lip_f + 1e-9);
      GridFunction lower2 = moreau_inf(f, 2.0 * lambda);
      CHECK((lower2.values <= lower.values + 1e-12).all());

      GridFunction ll = lasry_lions(f, EnvelopeParams{lambda, lambda / 2.0});
      CHECK(estimate_lipschitz(ll) <= lip_f + 1e-9);
      CHECK((ll.values >= lower.values - 1e-12).all());
    }
  }
}

TEST_CASE("2-d corpus: envelope pair slopes never expand; norms stay within the "
          "quantization tolerance") {
  // Axis pair slopes of a grid envelope are bounded by the input's (shift
  // the discrete minimizer along the axis). Cross-axis gradient norms pick
  // up the minimizer-quantization wiggle of amplitude ~ d h^2 / (8 mu),
  // i.e. up to ~ d h / mu on the slope scale.
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 1.0);
  for (const auto& oracle : corpus(2, 8080)) {
    GridFunction f = sample(oracle, Box(lo, hi), {129, 129});
    const double lip_f = estimate_lipschitz(f);
    const double h = f.max_spacing();
    for (double lambda : {0.05, 0.2}) {
      GridFunction inf_env = moreau_inf(f, lambda);
      GridFunction ll = lasry_lions(f, EnvelopeParams{lambda, lambda / 2.0});
      CHECK_MESSAGE(testing::pair_slope_estimate(inf_env) <= lip_f + 1e-9,
                    oracle.name, " inf lambda=", lambda);
      CHECK_MESSAGE(testing::pair_slope_estimate(ll) <= lip_f + 1e-9,
                    oracle.name, " ll lambda=", lambda);
      CHECK_MESSAGE(estimate_lipschitz(inf_env) <= lip_f + 2.0 * h / lambda + 1e-9,
                    oracle.name, " inf norm lambda=", lambda);
      CHECK_MESSAGE(estimate_lipschitz(ll) <= lip_f + 2.0 * h / (0.5 * lambda) + 1e-9,
                    oracle.name, " ll norm lambda=", lambda);
    }
  }
}

TEST_CASE("double-envelope error and curvature bounds at select_lambda scales") {
  const Box b1 = box1(-1.0, 1.0);
  const double eps = 0.05;
  for (const auto& oracle : corpus(1, 5150)) {
    if (oracle.lip_declared != 1.0) continue;
    GridFunction f = sample(oracle, b1, {2049});
    const EnvelopeParams p = select_lambda(eps, 1.0);
    GridFunction g = lasry_lions(f, p);
    CHECK(sup_distance(f, g) <= eps / 2.0);

    const double bound = std::max(1.0 / p.mu, 1.0 / (p.lambda - p.mu));
    const Eigen::VectorXd margin =
        Eigen::VectorXd::Constant(1, (p.lambda + p.mu) * 1.0);
    const double sd = second_difference_bound(restrict_interior(g, margin));
    CHECK(sd <= bound + 10.0 * bound * f.spacing(0) / p.lambda);
  }
}

TEST_CASE("lasry_lions second difference: brute-force |x| case") {
  GridFunction f = sample_abs(401);
  const GridFunction g = testing::brute_lasry_lions(f, 0.5, 0.25);
  const double sd = second_difference_bound(g);
  CHECK(sd <= 4.0 + 10.0 * 4.0 * f.spacing(0) / 0.5);
}
