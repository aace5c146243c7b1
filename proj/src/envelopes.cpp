#include "lipsmooth/envelopes.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace lipsmooth {

Eigen::ArrayXd inf_conv_quadratic_1d(const Eigen::Ref<const Eigen::ArrayXd>& values,
                                     double h, double lambda) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw ParameterError("inf_conv_quadratic_1d: h must be finite and > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("inf_conv_quadratic_1d: lambda must be finite and > 0");
  if (!values.isFinite().all())
    throw ParameterError("inf_conv_quadratic_1d: values must be finite");

  const Eigen::Index n = values.size();
  Eigen::ArrayXd out(n);
  if (n == 1) {
    out[0] = values[0];
    return out;
  }

  // Parabola scale: values[j] + c (k - j)^2 with c in index units.
  const double c = h * h / (2.0 * lambda);
  const double inf = std::numeric_limits<double>::infinity();

  // Felzenszwalb-Huttenlocher lower envelope. v holds the indices of the
  // active parabolas, z their region boundaries. The intersection abscissa
  // is evaluated as (df)/(2c dj) + (q+v)/2, which avoids the cancellation
  // of f[q] + c q^2 terms for large q.
  std::vector<Eigen::Index> v(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (Eigen::Index q = 1; q < n; ++q) {
    double s;
    for (;;) {
      const Eigen::Index p = v[static_cast<std::size_t>(k)];
      s = (values[q] - values[p]) / (2.0 * c * static_cast<double>(q - p)) +
          0.5 * static_cast<double>(q + p);
      if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = inf;
  }

  k = 0;
  for (Eigen::Index q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(q)) ++k;
    const double dj = static_cast<double>(q - v[static_cast<std::size_t>(k)]);
    out[q] = values[v[static_cast<std::size_t>(k)]] + c * dj * dj;
  }
  return out;
}

namespace {

// Applies the 1-d transform along every grid line of one axis.
void transform_axis(GridFunction& f, int axis, double lambda) {
  const auto strides = f.strides();
  const Eigen::Index stride = strides[axis];
  const Eigen::Index count = f.shape[axis];
  const double h = f.spacing(axis);
  const int d = f.dim();

  Eigen::ArrayXd line(count);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    if (idx[static_cast<std::size_t>(axis)] == 0) {
      Eigen::Index base = 0;
      for (int i = 0; i < d; ++i) base += idx[static_cast<std::size_t>(i)] * strides[i];
      Eigen::Index p = base;
      for (Eigen::Index k = 0; k < count; ++k, p += stride) line[k] = f.values[p];
      const Eigen::ArrayXd res = inf_conv_quadratic_1d(line, h, lambda);
      p = base;
      for (Eigen::Index k = 0; k < count; ++k, p += stride) f.values[p] = res[k];
    }
    int ax = d - 1;
    while (ax >= 0) {
      if (++idx[static_cast<std::size_t>(ax)] < f.shape[static_cast<std::size_t>(ax)]) break;
      idx[static_cast<std::size_t>(ax)] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
}

}  // namespace

GridFunction moreau_inf(const GridFunction& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("moreau_inf: lambda must be finite and > 0");
  f.validate();
  GridFunction g = f;
  for (int axis = 0; axis < f.dim(); ++axis) transform_axis(g, axis, lambda);
  return g;
}

GridFunction moreau_sup(const GridFunction& f, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ParameterError("moreau_sup: mu must be finite and > 0");
  GridFunction g = f;
  g.values = -g.values;
  g = moreau_inf(g, mu);
  g.values = -g.values;
  return g;
}

GridFunction lasry_lions(const GridFunction& f, const EnvelopeParams& params) {
  params.validate();
  return moreau_sup(moreau_inf(f, params.lambda), params.mu);
}

EnvelopeParams select_lambda(double epsilon, double L) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ParameterError("select_lambda: epsilon must be finite and > 0");
  if (!(L > 0.0) || !std::isfinite(L))
    throw ParameterError("select_lambda: L must be finite and > 0");
  EnvelopeParams p;
  p.lambda = (2.0 / 3.0) * epsilon / (L * L);
  p.mu = 0.5 * p.lambda;
  return p;
}

}  // namespace lipsmooth
