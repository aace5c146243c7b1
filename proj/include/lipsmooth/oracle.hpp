#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

namespace lipsmooth {

/// Closed-form Lipschitz test function with a declared Lipschitz constant.
struct FunctionOracle {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> evaluate;
  double lip_declared = 0.0;
};

}  // namespace lipsmooth
