#pragma once

#include <vector>

#include <Eigen/Core>

#include "lipsmooth/box.hpp"
#include "lipsmooth/errors.hpp"
#include "lipsmooth/oracle.hpp"

namespace lipsmooth {

/// Uniformly sampled scalar field on a box. Values are stored flat in
/// row-major axis order with axis 0 slowest, endpoints included on every
/// axis; this ordering is fixed so file outputs are bit-reproducible.
struct GridFunction {
  Box box;
  std::vector<Eigen::Index> shape;
  Eigen::ArrayXd values;

  int dim() const { return box.dim(); }

  Eigen::Index node_count() const {
    Eigen::Index n = 1;
    for (Eigen::Index s : shape) n *= s;
    return n;
  }

  /// Grid spacing along an axis: (upper - lower) / (points - 1).
  double spacing(int axis) const {
    return box.length(axis) / static_cast<double>(shape[axis] - 1);
  }

  double max_spacing() const {
    double h = 0.0;
    for (int i = 0; i < dim(); ++i) h = std::max(h, spacing(i));
    return h;
  }

  /// Row-major strides, axis 0 slowest.
  std::vector<Eigen::Index> strides() const {
    std::vector<Eigen::Index> s(shape.size());
    Eigen::Index acc = 1;
    for (int i = static_cast<int>(shape.size()) - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= shape[i];
    }
    return s;
  }

  /// Coordinates of the node with the given flat index.
  Eigen::VectorXd node(Eigen::Index flat) const {
    Eigen::VectorXd x(dim());
    for (int i = dim() - 1; i >= 0; --i) {
      Eigen::Index k = flat % shape[i];
      flat /= shape[i];
      x[i] = box.lower(i) + static_cast<double>(k) * spacing(i);
    }
    return x;
  }

  /// Checks the type invariants; throws on violation.
  void validate() const;

  static GridFunction zeros(const Box& box, const std::vector<Eigen::Index>& shape);
};

/// Samples an oracle on the grid. Deterministic node ordering; throws
/// EvaluationError naming the point if the oracle returns a non-finite value.
GridFunction sample(const FunctionOracle& oracle, const Box& box,
                    const std::vector<Eigen::Index>& shape);

/// max over grid nodes of |f - g|; f and g must share box and shape.
double sup_distance(const GridFunction& f, const GridFunction& g);

/// Grid estimate of the Lipschitz constant: the larger of
///  - max over axis-adjacent node pairs of |df| / h, and
///  - max over interior nodes of the Euclidean norm of the
///    central-difference gradient.
/// Pair slopes are exact for piecewise-linear f; gradient norms are sharper
/// for smooth f in d >= 2. Under-approximates the true constant of a smooth
/// function by O(h sup|f''|).
double estimate_lipschitz(const GridFunction& f);

/// max over axes i and axis-interior nodes of |f(x+h e_i) - 2 f(x) + f(x-h e_i)| / h_i^2.
/// Every axis must have at least 3 points.
double second_difference_bound(const GridFunction& f);

/// Copy of f restricted to the sub-box at least `margin[axis]` inside each
/// face (rounded outward to whole nodes). Used by the verification harness
/// to measure bounds where grid envelopes agree with their unrestricted
/// definitions.
GridFunction restrict_interior(const GridFunction& f, const Eigen::VectorXd& margin);

}  // namespace lipsmooth
