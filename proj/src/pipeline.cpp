#include "lipsmooth/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace lipsmooth {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Certified transition functions are deterministic in (epsilon, n), so they
// are memoized across pipeline calls.
struct MollifierCache {
  std::mutex mutex;
  std::map<uint64_t, std::shared_ptr<const ThetaBar>> theta_bars;
  std::map<std::pair<uint64_t, int>, std::shared_ptr<const Mollifier1D>> thetas;
  std::map<std::pair<uint64_t, int>, std::shared_ptr<const ThetaTable>> tables;
  std::map<uint64_t, std::shared_ptr<const Mollifier1D>> alphas;
};

MollifierCache& cache() {
  static MollifierCache c;
  return c;
}

uint64_t key_of(double eps) {
  uint64_t k;
  static_assert(sizeof(k) == sizeof(eps));
  std::memcpy(&k, &eps, sizeof(k));
  return k;
}

std::shared_ptr<const ThetaBar> cached_theta_bar(double eps) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto it = c.theta_bars.find(key_of(eps));
  if (it != c.theta_bars.end()) return it->second;
  auto tb = std::make_shared<const ThetaBar>(build_theta_bar(eps));
  c.theta_bars.emplace(key_of(eps), tb);
  return tb;
}

std::shared_ptr<const Mollifier1D> cached_theta_n(double eps, int n) {
  auto tb = cached_theta_bar(eps);
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  const auto key = std::make_pair(key_of(eps), n);
  auto it = c.thetas.find(key);
  if (it != c.thetas.end()) return it->second;
  auto th = std::make_shared<const Mollifier1D>(select_kappa(*tb, n));
  c.thetas.emplace(key, th);
  return th;
}

std::shared_ptr<const ThetaTable> cached_theta_table(double eps, int n) {
  auto th = cached_theta_n(eps, n);
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  const auto key = std::make_pair(key_of(eps), n);
  auto it = c.tables.find(key);
  if (it != c.tables.end()) return it->second;
  auto table = std::make_shared<const ThetaTable>(*th);
  c.tables.emplace(key, table);
  return table;
}

std::shared_ptr<const Mollifier1D> cached_alpha(double eps) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto it = c.alphas.find(key_of(eps));
  if (it != c.alphas.end()) return it->second;
  auto a = std::make_shared<const Mollifier1D>(build_alpha(eps));
  c.alphas.emplace(key_of(eps), a);
  return a;
}

std::vector<Eigen::Index> guard_shape(const GridFunction& f, double h_max) {
  std::vector<Eigen::Index> req(static_cast<std::size_t>(f.dim()));
  for (int i = 0; i < f.dim(); ++i)
    req[static_cast<std::size_t>(i)] =
        static_cast<Eigen::Index>(std::ceil(f.box.length(i) / h_max)) + 1;
  return req;
}

}  // namespace

const char* to_string(SmoothPath path) {
  switch (path) {
    case SmoothPath::constant: return "constant";
    case SmoothPath::bounded: return "bounded";
    case SmoothPath::nonneg: return "nonneg";
    case SmoothPath::sign_split: return "sign-split";
    case SmoothPath::scaled: return "scaled";
  }
  return "unknown";
}

GridFunction slice(const GridFunction& f, int n) {
  if (n < 1) throw ParameterError("slice: n must be >= 1");
  f.validate();
  if ((f.values < -1e-12).any())
    throw DomainError("slice: f must be nonnegative (sign-split first)");
  GridFunction out = f;
  const double base = static_cast<double>(n - 1);
  out.values = (f.values - base).cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

SliceSet make_slice_set(const GridFunction& f, double epsilon) {
  SliceSet set;
  set.epsilon = epsilon;
  const double max_v = f.values.maxCoeff();
  const int count = max_v <= 0.0 ? 0 : static_cast<int>(std::ceil(max_v - 1e-12));
  set.truncation_index = count;
  const double lip_f = estimate_lipschitz(f);
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(f.values.size());
  for (int n = 1; n <= count; ++n) {
    set.slices.push_back(slice(f, n));
    sum += set.slices.back().values;
    const double lip_n = estimate_lipschitz(set.slices.back());
    if (lip_n > lip_f + 1e-9) {
      std::ostringstream os;
      os << "slice " << n << " Lipschitz estimate " << lip_n
         << " exceeds the input estimate " << lip_f;
      throw DomainError(os.str());
    }
  }
  const double recon = (sum - f.values).abs().maxCoeff();
  if (recon > 1e-12) {
    std::ostringstream os;
    os << "slice reconstruction error " << recon << " exceeds 1e-12";
    throw DomainError(os.str());
  }
  return set;
}

SmoothResult smooth_bounded(const GridFunction& f, double epsilon, double M, bool strict) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ParameterError("smooth_bounded: epsilon must be finite and > 0");
  if (!(M > 0.0)) throw ParameterError("smooth_bounded: M must be > 0");
  f.validate();
  if ((f.values < -1e-9).any() || (f.values > M + 1e-9).any())
    throw DomainError("smooth_bounded: values must lie in [0, M]");

  SmoothingParams params;
  params.epsilon = epsilon;
  params.L = estimate_lipschitz(f);
  if (params.L <= 1e-12) {
    params.path = SmoothPath::constant;
    return {f, params};
  }

  // select_lambda scales as eps/L^2; below L = 1 that inflates lambda (and
  // with it the boundary margin) with no accuracy benefit, so the rule is
  // applied with max(L, 1).
  const EnvelopeParams env_params = select_lambda(epsilon, std::max(params.L, 1.0));
  params.lambda = env_params.lambda;
  params.mu = env_params.mu;
  params.path = SmoothPath::bounded;

  const double h_guard = env_params.lambda / 10.0;
  for (int i = 0; i < f.dim(); ++i) {
    if (f.spacing(i) > h_guard * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "smooth_bounded: spacing " << f.spacing(i) << " on axis " << i
         << " violates the resolution guard h <= lambda/10 = " << h_guard
         << "; required shape at least (";
      const auto req = guard_shape(f, h_guard);
      for (std::size_t k = 0; k < req.size(); ++k) os << (k ? ", " : "") << req[k];
      os << ")";
      throw ResolutionError(os.str(), guard_shape(f, h_guard));
    }
  }

  GridFunction env = lasry_lions(f, env_params);

  const double K = 2.0 / env_params.lambda;
  const SigmaChoice sc = select_sigma(epsilon, K, f.dim());
  params.sigma = sc.sigma;
  params.curvature_bound = K;
  params.trim_margin =
      (env_params.lambda + env_params.mu) * params.L + 6.0 * sc.sigma;
  if (sc.sigma < 0.5 * f.max_spacing()) {
    std::ostringstream os;
    os << "mollifier under-resolved: sigma " << sc.sigma << " < h/2 = "
       << 0.5 * f.max_spacing() << " (identity-like kernel)";
    params.warnings.push_back(os.str());
  }
  GridFunction g = gaussian_mollify(env, sc.sigma, strict);
  return {std::move(g), std::move(params)};
}

GridFunction compose_slices(const std::vector<GridFunction>& smoothed,
                            const std::vector<Mollifier1D>& thetas, double epsilon) {
  if (smoothed.size() != thetas.size())
    throw ParameterError("compose_slices: slice and mollifier counts differ");
  if (smoothed.empty())
    throw ParameterError("compose_slices: needs at least one slice");
  // epsilon is interface parity with the callers' budget bookkeeping; the
  // truncation tail eps/2^{N+2} is recorded by the caller.
  (void)epsilon;
  GridFunction g = smoothed.front();
  g.values = Eigen::ArrayXd::Zero(g.values.size());
  for (std::size_t i = 0; i < smoothed.size(); ++i) {
    if (smoothed[i].shape != g.shape || !(smoothed[i].box == g.box))
      throw ShapeError("compose_slices: slices must share box and shape");
    const ThetaTable table(thetas[i]);
    g.values += table.map(smoothed[i].values);
  }
  return g;
}

SmoothResult smooth_nonneg(const GridFunction& f, double epsilon, bool strict) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / 16.0))
    throw ParameterError("smooth_nonneg: epsilon must lie in (0, 1/16)");
  f.validate();
  if ((f.values < -1e-12).any())
    throw DomainError("smooth_nonneg: f must be nonnegative");
  const double lip_f = estimate_lipschitz(f);
  if (lip_f > 1.0 + 1e-9)
    throw DomainError("smooth_nonneg: f must be 1-Lipschitz (estimate " +
                      std::to_string(lip_f) + ")");

  SmoothingParams params;
  params.epsilon = epsilon;
  params.L = lip_f;
  params.path = SmoothPath::nonneg;
  params.mollifier_min_margin = std::numeric_limits<double>::infinity();
  params.internal_spacing = f.max_spacing();
  params.internal_dim = f.dim();

  SliceSet set = make_slice_set(f, epsilon);
  const int count = set.truncation_index;
  params.truncation_tail = std::ldexp(epsilon, -(count + 2));
  if (count == 0) {
    GridFunction g = f;
    g.values = Eigen::ArrayXd::Zero(g.values.size());
    params.mollifier_min_margin = 0.0;
    return {std::move(g), std::move(params)};
  }

  const double theta_lip_bound = 1.0 / (1.0 - 10.0 * epsilon);
  auto tb = cached_theta_bar(epsilon);
  const double theta_dd_max = tb->second_derivative_max();

  GridFunction g = f;
  g.values = Eigen::ArrayXd::Zero(g.values.size());
  double curvature = 0.0;
  double trim = 0.0;
  double ledger_active = 0.0;
  // negative means within tolerance; -1 when no passive slice was evaluated
  double ledger_passive_excess = -1.0;

  // n_x(x) is the index with f(x) in [n_x - 1, n_x); slices below it sit on
  // the upper flat of theta_n, slices above on the lower flat.
  Eigen::ArrayXi nx(f.values.size());
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    nx[i] = static_cast<int>(std::floor(f.values[i])) + 1;

  for (int n = 1; n <= count; ++n) {
    const GridFunction& f_n = set.slices[static_cast<std::size_t>(n - 1)];
    SmoothResult r_n = smooth_bounded(f_n, 0.5 * epsilon, 1.0, strict);

    SliceRecord rec;
    rec.n = n;
    rec.lip_slice = r_n.params.L;
    rec.lambda = r_n.params.lambda;
    rec.mu = r_n.params.mu;
    rec.sigma = r_n.params.sigma;
    rec.slice_error = sup_distance(f_n, r_n.g);
    rec.lip_smoothed = estimate_lipschitz(r_n.g);
    if (rec.slice_error > 0.5 * epsilon + 1e-12) {
      std::ostringstream os;
      os << "slice " << n << " smoothing error " << rec.slice_error
         << " exceeds the eps/2 budget " << 0.5 * epsilon;
      throw CertificationError(os.str());
    }
    // In d >= 2 the discrete envelope carries a minimizer-quantization
    // wiggle that inflates cross-axis gradient norms by up to ~ d h / mu;
    // axis pair slopes are exact, and the wiggle does not survive the
    // mapping back to the caller's grid.
    const double quant_tol =
        (f.dim() == 1 || !(r_n.params.mu > 0.0))
            ? 0.0
            : static_cast<double>(f.dim()) * f.max_spacing() / r_n.params.mu;
    if (rec.lip_smoothed > 1.0 + epsilon + quant_tol + 1e-9) {
      std::ostringstream os;
      os << "slice " << n << " Lipschitz estimate " << rec.lip_smoothed
         << " exceeds 1 + eps (+" << quant_tol << " quantization tolerance)";
      throw CertificationError(os.str());
    }

    auto theta = cached_theta_n(epsilon, n);
    rec.kappa = theta->kappa();
    rec.theta_certificate = theta->certificate();
    params.kappa_schedule.push_back(theta->kappa());
    for (const auto& check : theta->certificate().checks)
      params.mollifier_min_margin = std::min(params.mollifier_min_margin, check.margin);

    auto table = cached_theta_table(epsilon, n);
    const double passive_tol = std::ldexp(epsilon, -(n + 2));
    for (Eigen::Index i = 0; i < g.values.size(); ++i) {
      const double t = (*table)(r_n.g.values[i]);
      g.values[i] += t;
      const double dev = std::abs(t - f_n.values[i]);
      if (n == nx[i]) {
        ledger_active = std::max(ledger_active, dev);
      } else {
        ledger_passive_excess = std::max(ledger_passive_excess, dev - passive_tol);
      }
    }

    curvature += theta_dd_max * rec.lip_smoothed * rec.lip_smoothed +
                 theta_lip_bound * r_n.params.curvature_bound;
    trim = std::max(trim, r_n.params.trim_margin);
    params.lambda = std::max(params.lambda, r_n.params.lambda);
    params.mu = std::max(params.mu, r_n.params.mu);
    params.sigma = std::max(params.sigma, r_n.params.sigma);
    for (auto& w : r_n.params.warnings) params.warnings.push_back(std::move(w));
    params.slice_records.push_back(rec);
  }

  params.curvature_bound = curvature;
  params.trim_margin = trim;
  params.ledger_active_max = ledger_active;
  params.ledger_passive_excess = ledger_passive_excess;
  return {std::move(g), std::move(params)};
}

SmoothResult sign_split_smooth(const GridFunction& f, double epsilon, bool strict) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / 16.0))
    throw ParameterError("sign_split_smooth: epsilon must lie in (0, 1/16)");
  f.validate();
  const double lip_f = estimate_lipschitz(f);
  if (lip_f > 1.0 + 1e-9)
    throw DomainError("sign_split_smooth: f must be 1-Lipschitz (estimate " +
                      std::to_string(lip_f) + ")");

  GridFunction fp = f, fm = f;
  fp.values = f.values.cwiseMax(0.0);
  fm.values = (-f.values).cwiseMax(0.0);

  // The nonneg stage must return |f+- - g+-| <= eps and Lip <= 1 + eps;
  // its own ledger costs 8x on the sup side and (1+3e)/(1-10e) on the
  // Lipschitz side, so a 16x budget cut covers both.
  const double eps_inner = epsilon / 16.0;
  SmoothResult rp = smooth_nonneg(fp, eps_inner, strict);
  SmoothResult rm = smooth_nonneg(fm, eps_inner, strict);
  if (sup_distance(fp, rp.g) > epsilon || sup_distance(fm, rm.g) > epsilon)
    throw CertificationError("sign_split_smooth: half smoothing exceeded the eps budget");

  auto alpha = cached_alpha(epsilon);

  SmoothResult out{f, SmoothingParams{}};
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    out.g.values[i] = alpha->value(rp.g.values[i]) - alpha->value(rm.g.values[i]);

  SmoothingParams& params = out.params;
  params.epsilon = epsilon;
  params.L = lip_f;
  params.path = SmoothPath::sign_split;
  params.lambda = std::max(rp.params.lambda, rm.params.lambda);
  params.mu = std::max(rp.params.mu, rm.params.mu);
  params.sigma = std::max(rp.params.sigma, rm.params.sigma);
  params.kappa_schedule = rp.params.kappa_schedule;
  params.kappa_schedule.insert(params.kappa_schedule.end(),
                               rm.params.kappa_schedule.begin(),
                               rm.params.kappa_schedule.end());
  params.trim_margin = std::max(rp.params.trim_margin, rm.params.trim_margin);
  params.truncation_tail = rp.params.truncation_tail + rm.params.truncation_tail;
  params.internal_spacing = f.max_spacing();
  params.internal_dim = f.dim();
  params.mollifier_min_margin = std::min(rp.params.mollifier_min_margin,
                                         rm.params.mollifier_min_margin);
  params.alpha_certificate = alpha->certificate();
  for (const auto& check : alpha->certificate().checks)
    params.mollifier_min_margin = std::min(params.mollifier_min_margin, check.margin);
  params.ledger_active_max = std::max(rp.params.ledger_active_max,
                                      rm.params.ledger_active_max);
  params.ledger_passive_excess = std::max(rp.params.ledger_passive_excess,
                                          rm.params.ledger_passive_excess);

  const double lip_p = estimate_lipschitz(rp.g);
  const double lip_m = estimate_lipschitz(rm.g);
  const double alpha_dd_max = std::sqrt(alpha->kappa() / kPi);
  params.curvature_bound = alpha_dd_max * (lip_p * lip_p + lip_m * lip_m) +
                           rp.params.curvature_bound + rm.params.curvature_bound;
  params.slice_records = rp.params.slice_records;
  params.slice_records.insert(params.slice_records.end(),
                              rm.params.slice_records.begin(),
                              rm.params.slice_records.end());
  params.warnings = rp.params.warnings;
  params.warnings.insert(params.warnings.end(), rm.params.warnings.begin(),
                         rm.params.warnings.end());
  return out;
}

namespace {

// Multilinear interpolation of the source grid at a refined node. The
// refined grid subdivides every source cell by an integer factor, so the
// cell index and fraction come from integer arithmetic.
double interp_refined(const GridFunction& f, const std::vector<Eigen::Index>& factors,
                      const std::vector<Eigen::Index>& idx) {
  const int d = f.dim();
  const auto strides = f.strides();
  Eigen::Index base = 0;
  double frac[3] = {0.0, 0.0, 0.0};
  Eigen::Index cell[3] = {0, 0, 0};
  for (int i = 0; i < d; ++i) {
    Eigen::Index c = idx[static_cast<std::size_t>(i)] / factors[static_cast<std::size_t>(i)];
    Eigen::Index r = idx[static_cast<std::size_t>(i)] % factors[static_cast<std::size_t>(i)];
    if (c >= f.shape[static_cast<std::size_t>(i)] - 1 && r == 0) {
      // exact grid node at the upper face
      c = f.shape[static_cast<std::size_t>(i)] - 1;
    }
    cell[i] = std::min(c, f.shape[static_cast<std::size_t>(i)] - 2);
    frac[i] = static_cast<double>(idx[static_cast<std::size_t>(i)] -
                                  cell[i] * factors[static_cast<std::size_t>(i)]) /
              static_cast<double>(factors[static_cast<std::size_t>(i)]);
    base += cell[i] * strides[static_cast<std::size_t>(i)];
  }
  double acc = 0.0;
  const int corners = 1 << d;
  for (int cmask = 0; cmask < corners; ++cmask) {
    double w = 1.0;
    Eigen::Index off = 0;
    for (int i = 0; i < d; ++i) {
      if (cmask & (1 << i)) {
        w *= frac[i];
        off += strides[static_cast<std::size_t>(i)];
      } else {
        w *= 1.0 - frac[i];
      }
    }
    if (w != 0.0) acc += w * f.values[base + off];
  }
  return acc;
}

}  // namespace

SmoothResult smooth(const GridFunction& f, double epsilon, const SmoothOptions& options) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ParameterError("smooth: epsilon must be finite and > 0");
  f.validate();

  SmoothingParams params;
  params.epsilon = epsilon;
  params.L = estimate_lipschitz(f);
  if (params.L <= 1e-12) {
    params.path = SmoothPath::constant;
    return {f, params};
  }
  const double L = params.L;

  const double eps_inner = epsilon / (16.0 * (L + 1.0));
  if (!(eps_inner < 1.0 / 16.0))
    throw ParameterError("smooth: epsilon too large relative to Lip(f)");

  // Value scale a: the classical reduction takes a = eps, which at grid
  // scale would create ~range/eps slices with certificate tolerances
  // eps'/2^{n+2} below double precision. Any a with 8 a eps' <= eps
  // preserves the ledger; range/3 keeps the slice count at ~3 per sign.
  // The internal node count scales as a^{-d}, so a doubles toward the
  // ledger cap L+1 until the refined grid fits the node budget.
  const double abs_max = f.values.abs().maxCoeff();
  double a = std::min(std::max(epsilon, abs_max / 3.0), L + 1.0);

  double s = 0.0;
  std::vector<Eigen::Index> factors(static_cast<std::size_t>(f.dim()));
  std::vector<Eigen::Index> fine_shape(static_cast<std::size_t>(f.dim()));
  Eigen::Index total = 0;
  for (;;) {
    s = a / L;
    // Internal resolution target: the slice stage runs smooth_bounded at
    // grade eps_inner/32, whose guard is h <= lambda/10 = eps_inner/480.
    const double h_target = s * (eps_inner / 480.0);
    total = 1;
    for (int i = 0; i < f.dim(); ++i) {
      const Eigen::Index m = std::max<Eigen::Index>(
          1, static_cast<Eigen::Index>(std::ceil(f.spacing(i) / h_target - 1e-12)));
      factors[static_cast<std::size_t>(i)] = m;
      fine_shape[static_cast<std::size_t>(i)] =
          (f.shape[static_cast<std::size_t>(i)] - 1) * m + 1;
      total *= fine_shape[static_cast<std::size_t>(i)];
    }
    if (total <= options.max_internal_nodes || a >= L + 1.0) break;
    a = std::min(2.0 * a, L + 1.0);
  }
  if (total > options.max_internal_nodes) {
    std::ostringstream os;
    os << "smooth: internal grid needs " << total << " nodes (shape";
    for (auto n : fine_shape) os << " " << n;
    os << ") which exceeds the budget " << options.max_internal_nodes
       << "; raise SmoothOptions::max_internal_nodes, shrink the box, or relax epsilon";
    throw ResolutionError(os.str(), fine_shape);
  }

  const Box box_f(f.box.lower() / s, f.box.upper() / s);
  GridFunction F = GridFunction::zeros(box_f, fine_shape);
  if (options.resample_oracle) {
    for (Eigen::Index k = 0; k < F.values.size(); ++k) {
      const Eigen::VectorXd x = F.node(k);
      const double v = options.resample_oracle(s * x) / a;
      if (!std::isfinite(v))
        throw EvaluationError("smooth: resample oracle returned a non-finite value");
      F.values[k] = v;
    }
  } else {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(f.dim()), 0);
    for (Eigen::Index k = 0; k < F.values.size(); ++k) {
      F.values[k] = interp_refined(f, factors, idx) / a;
      int ax = f.dim() - 1;
      while (ax >= 0) {
        if (++idx[static_cast<std::size_t>(ax)] < fine_shape[static_cast<std::size_t>(ax)]) break;
        idx[static_cast<std::size_t>(ax)] = 0;
        --ax;
      }
    }
    if (f.dim() > 1)
      params.warnings.push_back(
          "internal refinement used multilinear interpolation; off-axis kinks "
          "may inflate the Lipschitz estimate (pass a resample oracle for exact sampling)");
  }

  // Normalize so the refined 1-Lipschitz precondition holds even when the
  // refined grid resolves slightly steeper slopes than the input grid did.
  const double lip_fine = estimate_lipschitz(F);
  if (lip_fine > 1.0) {
    F.values /= lip_fine;
    a *= lip_fine;
  }

  SmoothResult inner = sign_split_smooth(F, eps_inner, options.strict);

  SmoothResult out{f, SmoothingParams{}};
  const auto fine_strides = F.strides();
  const auto coarse_strides = f.strides();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(f.dim()), 0);
  while (true) {
    Eigen::Index src = 0, dst = 0;
    for (int i = 0; i < f.dim(); ++i) {
      src += idx[static_cast<std::size_t>(i)] * factors[static_cast<std::size_t>(i)] *
             fine_strides[static_cast<std::size_t>(i)];
      dst += idx[static_cast<std::size_t>(i)] * coarse_strides[static_cast<std::size_t>(i)];
    }
    out.g.values[dst] = a * inner.g.values[src];
    int ax = f.dim() - 1;
    while (ax >= 0) {
      if (++idx[static_cast<std::size_t>(ax)] < f.shape[static_cast<std::size_t>(ax)]) break;
      idx[static_cast<std::size_t>(ax)] = 0;
      --ax;
    }
    if (ax < 0) break;
  }

  params.path = SmoothPath::scaled;
  params.eps_internal = eps_inner;
  params.value_scale = a;
  params.domain_scale = s;
  params.lambda = inner.params.lambda;
  params.mu = inner.params.mu;
  params.sigma = inner.params.sigma;
  params.kappa_schedule = inner.params.kappa_schedule;
  params.trim_margin = s * inner.params.trim_margin;
  params.truncation_tail = a * inner.params.truncation_tail;
  params.curvature_bound = (L * L / a) * inner.params.curvature_bound;
  params.mollifier_min_margin = inner.params.mollifier_min_margin;
  params.ledger_active_max = inner.params.ledger_active_max;
  params.ledger_passive_excess = inner.params.ledger_passive_excess;
  params.slice_records = inner.params.slice_records;
  params.alpha_certificate = inner.params.alpha_certificate;
  params.internal_spacing = inner.params.internal_spacing;
  params.internal_dim = inner.params.internal_dim;
  for (auto& w : inner.params.warnings) params.warnings.push_back(std::move(w));
  out.params = std::move(params);
  return out;
}

}  // namespace lipsmooth
