// Independent reference implementations used as oracles by the test suite.
// Everything here is a direct transcription of the defining formulas with
// O(n^2) global minimization; none of it shares code with the fast paths it
// checks.
#pragma once

#include <Eigen/Core>
#include <limits>

#include "lipsmooth/grid_function.hpp"

namespace lipsmooth::testing {

inline Eigen::ArrayXd brute_inf_conv_1d(const Eigen::ArrayXd& values, double h,
                                        double lambda) {
  const Eigen::Index n = values.size();
  Eigen::ArrayXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = h * static_cast<double>(k - j);
      const double cand = values[j] + d * d / (2.0 * lambda);
      if (cand < best) best = cand;
    }
    out[k] = best;
  }
  return out;
}

// d-dimensional Moreau envelope by exhaustive minimization over all nodes.
inline GridFunction brute_moreau_inf(const GridFunction& f, double lambda) {
  GridFunction g = f;
  const Eigen::Index n = f.values.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd x = f.node(k);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d2 = (x - f.node(j)).squaredNorm();
      const double cand = f.values[j] + d2 / (2.0 * lambda);
      if (cand < best) best = cand;
    }
    g.values[k] = best;
  }
  return g;
}

inline GridFunction brute_moreau_sup(const GridFunction& f, double mu) {
  GridFunction g = f;
  const Eigen::Index n = f.values.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd x = f.node(k);
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d2 = (x - f.node(j)).squaredNorm();
      const double cand = f.values[j] - d2 / (2.0 * mu);
      if (cand > best) best = cand;
    }
    g.values[k] = best;
  }
  return g;
}

inline GridFunction brute_lasry_lions(const GridFunction& f, double lambda, double mu) {
  return brute_moreau_sup(brute_moreau_inf(f, lambda), mu);
}

// Moreau envelope of |x| in closed form.
inline double huber(double x, double lambda) {
  const double a = std::abs(x);
  return a <= lambda ? x * x / (2.0 * lambda) : a - 0.5 * lambda;
}

// Axis-adjacent pair slopes only (no cross-axis norms): the part of the
// Lipschitz estimator that grid envelopes can never expand.
inline double pair_slope_estimate(const GridFunction& f) {
  const auto strides = f.strides();
  double best = 0.0;
  const int d = f.dim();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Eigen::Index flat = 0;
    for (int i = 0; i < d; ++i) flat += idx[static_cast<std::size_t>(i)] * strides[static_cast<std::size_t>(i)];
    for (int axis = 0; axis < d; ++axis) {
      if (idx[static_cast<std::size_t>(axis)] + 1 < f.shape[static_cast<std::size_t>(axis)]) {
        const double slope =
            std::abs(f.values[flat + strides[static_cast<std::size_t>(axis)]] - f.values[flat]) /
            f.spacing(axis);
        best = std::max(best, slope);
      }
    }
    int ax = d - 1;
    while (ax >= 0) {
      if (++idx[static_cast<std::size_t>(ax)] < f.shape[static_cast<std::size_t>(ax)]) break;
      idx[static_cast<std::size_t>(ax)] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return best;
}

}  // namespace lipsmooth::testing
