#include "lipsmooth/verify.hpp"

#include <algorithm>
#include <cmath>

namespace lipsmooth {

double lipschitz_tolerance(double curvature_bound, double h_max, double epsilon) {
  const double tol = 10.0 * curvature_bound * h_max;
  return std::max(1e-9, std::min(tol, 0.5 * epsilon));
}

CertReport verify_theorem1(const GridFunction& f, const SmoothResult& result,
                           double epsilon, const std::string& function_name) {
  if (f.shape != result.g.shape || !(f.box == result.g.box))
    throw ShapeError("verify_theorem1: input and output must share the grid");

  const SmoothingParams& p = result.params;
  CertReport report;
  report.function_name = function_name;
  report.epsilon = epsilon;
  report.path = to_string(p.path);
  report.warnings = p.warnings;
  report.interior_margin = p.trim_margin;

  const Eigen::VectorXd margin = Eigen::VectorXd::Constant(f.dim(), p.trim_margin);
  const GridFunction f_in = restrict_interior(f, margin);
  const GridFunction g_in = restrict_interior(result.g, margin);

  report.L_measured = estimate_lipschitz(f_in);
  report.sup_error_measured = sup_distance(f_in, g_in);
  report.lip_output_measured = estimate_lipschitz(g_in);
  report.bound_sup = epsilon;
  report.bound_lip = report.L_measured + epsilon;
  report.lip_tolerance = lipschitz_tolerance(p.curvature_bound, f.max_spacing(), epsilon);

  // Stage records from provenance; a report passes only if every stage does.
  if (p.path != SmoothPath::constant) {
    StageRecord prm;
    prm.stage = "parameters";
    prm.metrics["lambda"] = p.lambda;
    prm.metrics["mu"] = p.mu;
    prm.metrics["sigma"] = p.sigma;
    prm.metrics["curvature_bound"] = p.curvature_bound;
    if (p.path == SmoothPath::scaled) {
      prm.metrics["eps_internal"] = p.eps_internal;
      prm.metrics["value_scale"] = p.value_scale;
      prm.metrics["domain_scale"] = p.domain_scale;
    }
    prm.pass = true;
    report.stages.push_back(prm);
  }
  if (!p.slice_records.empty()) {
    StageRecord env;
    env.stage = "slice-envelopes";
    // grade the nonneg stage actually ran at: eps directly, eps/16 under a
    // sign split, eps_internal/16 after the scaling reduction
    double grade = p.epsilon;
    if (p.path == SmoothPath::scaled)
      grade = p.eps_internal / 16.0;
    else if (p.path == SmoothPath::sign_split)
      grade = p.epsilon / 16.0;
    double max_err = 0.0, max_lip = 0.0, max_quant_tol = 0.0;
    bool lip_ok = true;
    for (const auto& r : p.slice_records) {
      max_err = std::max(max_err, r.slice_error);
      max_lip = std::max(max_lip, r.lip_smoothed);
      // cross-axis norms of a grid envelope in d >= 2 carry the minimizer
      // quantization wiggle (~ d h / mu); pair slopes are exact
      const double quant_tol = (p.internal_dim == 1 || !(r.mu > 0.0))
                                   ? 0.0
                                   : p.internal_dim * p.internal_spacing / r.mu;
      max_quant_tol = std::max(max_quant_tol, quant_tol);
      lip_ok = lip_ok && r.lip_smoothed <= 1.0 + grade + quant_tol + 1e-9;
    }
    env.metrics["max_slice_error"] = max_err;
    env.metrics["slice_error_budget"] = 0.5 * grade;
    env.metrics["max_slice_lipschitz"] = max_lip;
    env.metrics["slice_lipschitz_budget"] = 1.0 + grade;
    env.metrics["slice_quantization_tolerance"] = max_quant_tol;
    env.pass = max_err <= 0.5 * grade + 1e-12 && lip_ok;
    report.stages.push_back(env);

    StageRecord moll;
    moll.stage = "mollifier-certificates";
    moll.metrics["min_margin"] = p.mollifier_min_margin;
    moll.metrics["kappa_max"] =
        p.kappa_schedule.empty()
            ? 0.0
            : *std::max_element(p.kappa_schedule.begin(), p.kappa_schedule.end());
    // property-name -> measured-margin pairs, per certified mollifier
    for (const auto& r : p.slice_records) {
      const std::string prefix = "theta_" + std::to_string(r.n) + ".";
      for (const auto& c : r.theta_certificate.checks)
        moll.metrics[prefix + c.property] = c.margin;
    }
    for (const auto& c : p.alpha_certificate.checks)
      moll.metrics["alpha." + c.property] = c.margin;
    moll.pass = p.mollifier_min_margin >= 0.0;
    report.stages.push_back(moll);

    StageRecord glue;
    glue.stage = "gluing-ledger";
    glue.metrics["active_slice_max"] = p.ledger_active_max;
    glue.metrics["passive_slice_excess"] = p.ledger_passive_excess;
    glue.metrics["truncation_tail"] = p.truncation_tail;
    glue.pass = p.ledger_active_max <= 7.0 * grade + 1e-12 &&
                p.ledger_passive_excess <= 1e-12;
    report.stages.push_back(glue);
  }

  report.pass = report.sup_error_measured <= report.bound_sup &&
                report.lip_output_measured <= report.bound_lip + report.lip_tolerance;
  for (const auto& s : report.stages) report.pass = report.pass && s.pass;
  return report;
}

StageRecord verify_envelope_stage(const GridFunction& f, const EnvelopeParams& params,
                                  double epsilon) {
  params.validate();
  const GridFunction g = lasry_lions(f, params);

  const double lip_f = estimate_lipschitz(f);
  const double margin_width = (params.lambda + params.mu) * lip_f;
  const Eigen::VectorXd margin = Eigen::VectorXd::Constant(f.dim(), margin_width);
  const GridFunction f_in = restrict_interior(f, margin);
  const GridFunction g_in = restrict_interior(g, margin);

  const double k_bound = std::max(1.0 / params.mu, 1.0 / (params.lambda - params.mu));
  const double sd_tol = 10.0 * k_bound * f.max_spacing() / params.lambda;

  StageRecord rec;
  rec.stage = "lasry-lions";
  rec.metrics["sup_error"] = sup_distance(f_in, g_in);
  rec.metrics["sup_budget"] = 0.5 * epsilon;
  rec.metrics["second_difference"] = second_difference_bound(g_in);
  rec.metrics["curvature_bound"] = k_bound;
  rec.metrics["curvature_tolerance"] = sd_tol;
  rec.metrics["interior_margin"] = margin_width;
  rec.pass = rec.metrics["sup_error"] <= 0.5 * epsilon &&
             rec.metrics["second_difference"] <= k_bound + sd_tol;
  return rec;
}

}  // namespace lipsmooth
