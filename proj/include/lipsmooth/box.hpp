#pragma once

#include <sstream>

#include <Eigen/Core>

#include "lipsmooth/errors.hpp"

namespace lipsmooth {

/// Axis-aligned box in R^d, d in {1,2,3}. The domain of every grid function.
class Box {
public:
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
      throw ParameterError("Box: lower and upper must have equal dimension");
    if (lower_.size() < 1 || lower_.size() > 3) {
      std::ostringstream os;
      os << "Box: dimension " << lower_.size() << " unsupported (d must be 1, 2 or 3)";
      throw ParameterError(os.str());
    }
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
      if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
        std::ostringstream os;
        os << "Box: lower[" << i << "]=" << lower_[i] << " must be finite and < upper["
           << i << "]=" << upper_[i];
        throw ParameterError(os.str());
      }
    }
  }

  int dim() const { return static_cast<int>(lower_.size()); }
  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  double length(int axis) const { return upper_[axis] - lower_[axis]; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  bool operator==(const Box& other) const {
    return lower_.size() == other.lower_.size() && lower_ == other.lower_ &&
           upper_ == other.upper_;
  }

private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

}  // namespace lipsmooth
