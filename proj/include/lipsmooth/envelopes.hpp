#pragma once

#include <Eigen/Core>

#include "lipsmooth/grid_function.hpp"

namespace lipsmooth {

/// Inf/sup-convolution scales; requires 0 < mu < lambda.
struct EnvelopeParams {
  double lambda = 0.0;
  double mu = 0.0;

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw ParameterError("EnvelopeParams: lambda must be finite and > 0");
    if (!(mu > 0.0) || !(mu < lambda))
      throw ParameterError("EnvelopeParams: mu must satisfy 0 < mu < lambda");
  }
};

/// 1-d quadratic inf-convolution on a uniform lattice:
///   out[k] = min_j ( values[j] + (h (k - j))^2 / (2 lambda) ),
/// computed by the lower-envelope-of-parabolas sweep in O(n). Agrees with
/// the brute-force O(n^2) minimum; parabola intersections at equal abscissae
/// resolve toward the lower index.
Eigen::ArrayXd inf_conv_quadratic_1d(const Eigen::Ref<const Eigen::ArrayXd>& values,
                                     double h, double lambda);

/// Moreau inf-envelope f_lambda on the grid: the d-dimensional minimization
/// factorizes over axes, so the 1-d kernel is applied along each axis in
/// sequence. Satisfies f_lambda <= f nodewise and does not increase the
/// Lipschitz estimate.
GridFunction moreau_inf(const GridFunction& f, double lambda);

/// Moreau sup-envelope f^mu = -((-f)_mu); satisfies f^mu >= f nodewise.
GridFunction moreau_sup(const GridFunction& f, double mu);

/// Lasry-Lions double envelope (f_lambda)^mu. Grid second differences are
/// bounded by max(1/mu, 1/(lambda-mu)) up to O(h/lambda) junction noise.
GridFunction lasry_lions(const GridFunction& f, const EnvelopeParams& params);

/// Envelope scales for a target accuracy: lambda = (2/3) eps / L^2 and
/// mu = lambda / 2. Standard Moreau bounds give |f_lambda - f| <= L^2 lambda / 2
/// and |(f_lambda)^mu - f_lambda| <= L^2 mu / 2, so the double-envelope error
/// is at most (3/4) L^2 lambda = eps / 2.
EnvelopeParams select_lambda(double epsilon, double L);

}  // namespace lipsmooth
