#include "lipsmooth/grid_function.hpp"

#include <cmath>
#include <sstream>

namespace lipsmooth {

namespace {

void check_shape_valid(const Box& box, const std::vector<Eigen::Index>& shape) {
  if (static_cast<int>(shape.size()) != box.dim())
    throw ParameterError("grid shape dimension does not match box dimension");
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 2) {
      std::ostringstream os;
      os << "grid shape[" << i << "]=" << shape[i] << " must be >= 2";
      throw ParameterError(os.str());
    }
  }
}

// Walks all nodes of a line along `axis` starting at flat index `base`.
struct LineRange {
  Eigen::Index base;
  Eigen::Index stride;
  Eigen::Index count;
};

// Enumerates the starting indices of all grid lines along `axis`.
std::vector<LineRange> lines_along(const GridFunction& f, int axis) {
  const auto strides = f.strides();
  const Eigen::Index stride = strides[axis];
  const Eigen::Index count = f.shape[axis];
  std::vector<LineRange> out;
  out.reserve(static_cast<std::size_t>(f.node_count() / count));
  const int d = f.dim();
  std::vector<Eigen::Index> idx(d, 0);
  while (true) {
    if (idx[axis] == 0) {
      Eigen::Index base = 0;
      for (int i = 0; i < d; ++i) base += idx[i] * strides[i];
      out.push_back({base, stride, count});
    }
    int ax = d - 1;
    while (ax >= 0) {
      if (++idx[ax] < f.shape[ax]) break;
      idx[ax] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return out;
}

}  // namespace

void GridFunction::validate() const {
  check_shape_valid(box, shape);
  if (values.size() != node_count())
    throw ParameterError("grid values length does not match the product of the shape");
  if (!values.isFinite().all())
    throw ParameterError("grid values must all be finite");
}

GridFunction GridFunction::zeros(const Box& box, const std::vector<Eigen::Index>& shape) {
  check_shape_valid(box, shape);
  GridFunction g{box, shape, {}};
  g.values = Eigen::ArrayXd::Zero(g.node_count());
  return g;
}

GridFunction sample(const FunctionOracle& oracle, const Box& box,
                    const std::vector<Eigen::Index>& shape) {
  GridFunction g = GridFunction::zeros(box, shape);
  const Eigen::Index n = g.node_count();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd x = g.node(k);
    const double v = oracle.evaluate(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "oracle '" << oracle.name << "' returned non-finite value " << v << " at (";
      for (int i = 0; i < box.dim(); ++i) os << (i ? ", " : "") << x[i];
      os << ")";
      throw EvaluationError(os.str());
    }
    g.values[k] = v;
  }
  return g;
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
  if (f.shape != g.shape || !(f.box == g.box))
    throw ShapeError("sup_distance: grids must share box and shape");
  return (f.values - g.values).abs().maxCoeff();
}

double estimate_lipschitz(const GridFunction& f) {
  f.validate();
  const int d = f.dim();
  double best = 0.0;

  // Axis-adjacent pair slopes.
  for (int axis = 0; axis < d; ++axis) {
    const double inv_h = 1.0 / f.spacing(axis);
    for (const LineRange& line : lines_along(f, axis)) {
      Eigen::Index i = line.base;
      for (Eigen::Index k = 0; k + 1 < line.count; ++k, i += line.stride) {
        const double slope = std::abs(f.values[i + line.stride] - f.values[i]) * inv_h;
        if (slope > best) best = slope;
      }
    }
  }

  // Central-difference gradient norms at nodes interior on every axis.
  bool has_interior = true;
  for (int axis = 0; axis < d; ++axis)
    if (f.shape[axis] < 3) has_interior = false;
  if (has_interior) {
    const auto strides = f.strides();
    std::vector<double> inv_2h(d);
    for (int axis = 0; axis < d; ++axis) inv_2h[axis] = 0.5 / f.spacing(axis);
    std::vector<Eigen::Index> idx(d, 1);
    while (true) {
      Eigen::Index flat = 0;
      for (int i = 0; i < d; ++i) flat += idx[i] * strides[i];
      double norm2 = 0.0;
      for (int axis = 0; axis < d; ++axis) {
        const double gi =
            (f.values[flat + strides[axis]] - f.values[flat - strides[axis]]) * inv_2h[axis];
        norm2 += gi * gi;
      }
      const double norm = std::sqrt(norm2);
      if (norm > best) best = norm;
      int ax = d - 1;
      while (ax >= 0) {
        if (++idx[ax] < f.shape[ax] - 1) break;
        idx[ax] = 1;
        --ax;
      }
      if (ax < 0) break;
    }
  }
  return best;
}

double second_difference_bound(const GridFunction& f) {
  f.validate();
  for (std::size_t i = 0; i < f.shape.size(); ++i) {
    if (f.shape[i] < 3) {
      std::ostringstream os;
      os << "second_difference_bound: axis " << i << " has " << f.shape[i]
         << " points, needs at least 3";
      throw ParameterError(os.str());
    }
  }
  double best = 0.0;
  for (int axis = 0; axis < f.dim(); ++axis) {
    const double inv_h2 = 1.0 / (f.spacing(axis) * f.spacing(axis));
    for (const LineRange& line : lines_along(f, axis)) {
      Eigen::Index i = line.base + line.stride;
      for (Eigen::Index k = 1; k + 1 < line.count; ++k, i += line.stride) {
        const double dd = std::abs(f.values[i + line.stride] - 2.0 * f.values[i] +
                                   f.values[i - line.stride]) *
                          inv_h2;
        if (dd > best) best = dd;
      }
    }
  }
  return best;
}

GridFunction restrict_interior(const GridFunction& f, const Eigen::VectorXd& margin) {
  if (margin.size() != f.dim())
    throw ParameterError("restrict_interior: margin dimension mismatch");
  const int d = f.dim();
  std::vector<Eigen::Index> lo(d), hi(d), shape(d);
  Eigen::VectorXd lower(d), upper(d);
  for (int i = 0; i < d; ++i) {
    if (margin[i] < 0.0) throw ParameterError("restrict_interior: negative margin");
    const double h = f.spacing(i);
    Eigen::Index cut = static_cast<Eigen::Index>(std::ceil(margin[i] / h - 1e-12));
    // Never trim below a 2-node window; a margin that would is clamped.
    cut = std::min(cut, (f.shape[i] - 2) / 2);
    lo[i] = cut;
    hi[i] = f.shape[i] - 1 - cut;
    shape[i] = hi[i] - lo[i] + 1;
    lower[i] = f.box.lower(i) + static_cast<double>(lo[i]) * h;
    upper[i] = f.box.lower(i) + static_cast<double>(hi[i]) * h;
  }
  GridFunction g = GridFunction::zeros(Box(lower, upper), shape);
  const auto src_strides = f.strides();
  const auto dst_strides = g.strides();
  std::vector<Eigen::Index> idx(d, 0);
  while (true) {
    Eigen::Index src = 0, dst = 0;
    for (int i = 0; i < d; ++i) {
      src += (lo[i] + idx[i]) * src_strides[i];
      dst += idx[i] * dst_strides[i];
    }
    g.values[dst] = f.values[src];
    int ax = d - 1;
    while (ax >= 0) {
      if (++idx[ax] < shape[ax]) break;
      idx[ax] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return g;
}

}  // namespace lipsmooth
