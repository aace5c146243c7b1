#include "lipsmooth/quadrature.hpp"

#include <cmath>

namespace lipsmooth {

namespace {

struct GaussRule {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};

// Roots of the Legendre polynomial P_16 by Newton iteration from the
// Chebyshev initial guesses, weights 2 / ((1 - x^2) P'_16(x)^2).
GaussRule make_rule() {
  constexpr int n = 16;
  GaussRule rule{};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        // one polishing step after convergence
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= n; ++k) {
          const double qk = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / static_cast<double>(k);
          q0 = q1;
          q1 = qk;
        }
        dp = static_cast<double>(n) * (x * q1 - q0) / (x * x - 1.0);
        x -= q1 / dp;
        break;
      }
    }
    // recompute P' at the converged root for the weight
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

}  // namespace

const std::array<double, 16>& gauss_legendre_nodes() { return rule().nodes; }
const std::array<double, 16>& gauss_legendre_weights() { return rule().weights; }

}  // namespace lipsmooth
