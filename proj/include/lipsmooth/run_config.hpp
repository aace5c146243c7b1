#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lipsmooth {

/// Parsed run configuration (flat key = value text file).
struct RunConfig {
  std::vector<std::string> corpus_names{"all"};
  int d = 1;
  Eigen::VectorXd box_lower;
  Eigen::VectorXd box_upper;
  std::vector<Eigen::Index> shape;
  std::vector<double> epsilons;
  std::string out_dir = "out";
  bool strict = false;
  std::uint64_t seed = 12345;
  Eigen::Index max_internal_nodes = Eigen::Index(1) << 23;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Validates field ranges and the budget rule: every epsilon must satisfy
/// eps in (0, 1) and the nonneg-stage grade eps/8 must stay strictly below
/// the 1/16 admissibility bound of the transition-function construction,
/// i.e. eps < 1/2; additionally eps/(16 (L+1)) < 1/16 for every selected
/// corpus constant L. Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

/// Executes the pipeline for each (corpus member, epsilon): sample, smooth,
/// verify, write grid files, report JSON, CSV summary and plot data.
/// Returns 0 iff every certification passed.
int run(const RunConfig& config, std::ostream& log);

}  // namespace lipsmooth
