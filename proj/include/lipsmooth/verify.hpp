#pragma once

#include <map>
#include <string>
#include <vector>

#include "lipsmooth/pipeline.hpp"

namespace lipsmooth {

/// One audited stage of a smoothing run: named metrics plus a pass flag.
struct StageRecord {
  std::string stage;
  std::map<std::string, double> metrics;
  bool pass = false;
};

/// Machine-readable certification of one smoothing run against the
/// end-to-end contract |f-g| <= eps, Lip(g) <= Lip(f) + eps. pass requires
/// the sup bound, the Lipschitz bound (with the stated estimator tolerance)
/// and every stage record to hold; stage failures are never masked.
struct CertReport {
  std::string function_name;
  double epsilon = 0.0;
  double L_measured = 0.0;
  double sup_error_measured = 0.0;
  double lip_output_measured = 0.0;
  double bound_sup = 0.0;  // = epsilon
  double bound_lip = 0.0;  // = L_measured + epsilon
  double lip_tolerance = 0.0;
  double interior_margin = 0.0;  // trim width used for the measurements
  std::string path;
  std::vector<StageRecord> stages;
  std::vector<std::string> warnings;
  bool pass = false;
};

/// Grid-estimator pass tolerance for a Lipschitz bound: discretization bias
/// is O(h K), so the stated tolerance is 10 K h capped at eps/2 so the
/// check never becomes vacuous for strongly curved outputs.
double lipschitz_tolerance(double curvature_bound, double h_max, double epsilon);

/// Measures |f-g| <= eps and Lip(g) <= Lip(f) + eps on the margin-trimmed
/// interior window and fills the report.
CertReport verify_theorem1(const GridFunction& f, const SmoothResult& result,
                           double epsilon, const std::string& function_name = "");

/// Measures the Lasry-Lions stage: envelope error against eps/2 and the
/// second-difference bound against max(1/mu, 1/(lambda-mu)) with the
/// 10 K h / lambda discretization tolerance.
StageRecord verify_envelope_stage(const GridFunction& f, const EnvelopeParams& params,
                                  double epsilon);

}  // namespace lipsmooth
