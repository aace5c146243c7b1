#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lipsmooth/envelopes.hpp"
#include "lipsmooth/grid_function.hpp"
#include "lipsmooth/mollifiers.hpp"

namespace lipsmooth {

/// Nodewise unit slice of a nonnegative function:
///   0 if f <= n-1,  f - (n-1) if n-1 <= f <= n,  1 if f >= n.
/// Output lies in [0,1] and is 1-Lipschitz whenever f is.
GridFunction slice(const GridFunction& f, int n);

/// The finite slice decomposition f = sum_{n=1..N} f_n with N = ceil(max f).
/// Construction verifies the reconstruction identity to 1e-12 and that no
/// slice increases the Lipschitz estimate.
struct SliceSet {
  std::vector<GridFunction> slices;
  int truncation_index = 0;
  double epsilon = 0.0;
};

SliceSet make_slice_set(const GridFunction& f, double epsilon);

enum class SmoothPath { constant, bounded, nonneg, sign_split, scaled };

const char* to_string(SmoothPath path);

/// Per-slice provenance: parameters used and the measured stage errors.
struct SliceRecord {
  int n = 0;
  double lip_slice = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double kappa = 0.0;
  double slice_error = 0.0;   // sup |f_n - g_n|
  double lip_smoothed = 0.0;  // Lipschitz estimate of g_n
  Certificate theta_certificate;
};

/// Everything a verification pass needs to audit a smoothing run.
struct SmoothingParams {
  double epsilon = 0.0;  // budget this stage ran at
  double L = 0.0;        // Lipschitz estimate of the input
  double lambda = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> kappa_schedule;
  SmoothPath path = SmoothPath::bounded;

  // scaled path only
  double eps_internal = 0.0;  // budget handed to the sign split
  double value_scale = 1.0;   // a: f = a F(x / s)
  double domain_scale = 1.0;  // s

  double trim_margin = 0.0;      // boundary-exactness margin, input units
  double curvature_bound = 0.0;  // certified curvature of g, input units
  double truncation_tail = 0.0;  // eps / 2^{N+2} for the omitted series tail
  double mollifier_min_margin = 0.0;
  double internal_spacing = 0.0;  // h of the grid the slices ran on (F units)
  int internal_dim = 1;

  // pointwise gluing ledger extremes measured during composition
  double ledger_active_max = 0.0;   // max |theta_n(g_n) - f_n| at n = n_x
  double ledger_passive_excess = 0.0;  // max over n != n_x of the same minus eps/2^{n+2}

  std::vector<SliceRecord> slice_records;
  Certificate alpha_certificate;  // sign-split paths only
  std::vector<std::string> warnings;
};

struct SmoothResult {
  GridFunction g;
  SmoothingParams params;
};

/// Bounded-case smoothing: Lasry-Lions envelope at select_lambda scales
/// followed by Gaussian mollification at select_sigma bandwidth. Contract:
/// sup|f - g| <= eps and Lip(g) <= L + eps for f valued in [0, M].
SmoothResult smooth_bounded(const GridFunction& f, double epsilon, double M,
                            bool strict = false);

/// g(x) = sum_n theta_n(g_n(x)) over the truncated slice family.
GridFunction compose_slices(const std::vector<GridFunction>& smoothed,
                            const std::vector<Mollifier1D>& thetas, double epsilon);

/// Nonnegative 1-Lipschitz case: slice, smooth each slice at eps/2 grade,
/// glue with certified theta_n. Contract: sup|f - g| <= 8 eps and
/// Lip(g) <= (1 + 3 eps)/(1 - 10 eps).
SmoothResult smooth_nonneg(const GridFunction& f, double epsilon, bool strict = false);

/// Sign-changing 1-Lipschitz case: g = alpha(g+) - alpha(g-) with g+- the
/// nonnegative smoothings of f+-. Contract: sup|f - g| <= 8 eps and
/// Lip(g) <= (1 + eps)^2.
SmoothResult sign_split_smooth(const GridFunction& f, double epsilon, bool strict = false);

struct SmoothOptions {
  /// Exact resampler for the internal refined grid (point in input
  /// coordinates -> value). Without it the input grid is refined by
  /// multilinear interpolation, which in d >= 2 can inflate the Lipschitz
  /// estimate at off-axis kinks.
  std::function<double(const Eigen::VectorXd&)> resample_oracle;
  Eigen::Index max_internal_nodes = Eigen::Index(1) << 23;
  bool strict = false;
};

/// Top-level entry point for arbitrary Lipschitz f: rescales to the
/// 1-Lipschitz normal form F(x) = f(s x)/a, refines the grid until the
/// envelope resolution guard holds, runs the sign split at the
/// re-parameterized budget eps' = eps/(16 (L+1)), and maps back. Contract:
/// sup|f - g| <= eps and Lip(g) <= L + eps.
SmoothResult smooth(const GridFunction& f, double epsilon,
                    const SmoothOptions& options = {});

}  // namespace lipsmooth
