#pragma once

#include <array>

#include <Eigen/Core>

namespace lipsmooth {

/// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1],
/// computed once by Newton iteration on P_16 (deterministic).
const std::array<double, 16>& gauss_legendre_nodes();
const std::array<double, 16>& gauss_legendre_weights();

/// Composite Gauss-Legendre-16 integration of f over [a, b] with `panels`
/// equal panels. Scalar-generic so the same rule integrates real and
/// complex-valued integrands of a real variable.
template <typename F>
auto integrate(F&& f, double a, double b, int panels) -> decltype(f(0.0)) {
  using R = decltype(f(0.0));
  const auto& xs = gauss_legendre_nodes();
  const auto& ws = gauss_legendre_weights();
  if (panels < 1) panels = 1;
  const double width = (b - a) / static_cast<double>(panels);
  R total{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * width;
    const double half = 0.5 * width;
    R acc{};
    for (int i = 0; i < 16; ++i) acc += ws[i] * f(mid + half * xs[i]);
    total += acc * half;
  }
  return total;
}

}  // namespace lipsmooth
