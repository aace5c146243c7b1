#include "lipsmooth/corpus.hpp"

#include <cmath>
#include <random>

#include "lipsmooth/errors.hpp"

namespace lipsmooth {

namespace {

double dist_to_set(const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::min(best, (x - p).norm());
  return best;
}

// Seeded point set for the distance member. Points sit on the 1/16 lattice
// and consecutive offsets run along an axis, then a face diagonal, then the
// main diagonal, so every pairwise difference is an axis or equal-component
// diagonal vector. Grid estimators then never exceed the Lipschitz constant
// on grids whose spacing divides 1/16: cone apexes land on nodes and ridge
// kinks are mirror-symmetric about axis/diagonal planes.
std::vector<Eigen::VectorXd> seeded_points(int d, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const double step = 0.25 + 0.0625 * static_cast<double>(rng() % 3);
  const double sign = (rng() % 2 == 0) ? 1.0 : -1.0;
  const double base = sign > 0.0 ? -0.5 : 0.25;

  Eigen::VectorXd p0(d);
  for (int k = 0; k < d; ++k)
    p0[k] = base + static_cast<double>(rng() % 5) / 16.0;
  std::vector<Eigen::VectorXd> pts{p0};
  // Each new point extends the chain along the next axis, so all pairwise
  // differences are axis or equal-component diagonal vectors.
  Eigen::VectorXd p = p0;
  for (int i = 1; i < count; ++i) {
    p[(i - 1) % d] += sign * step;
    pts.push_back(p);
  }
  return pts;
}

Eigen::VectorXd unit_direction(int d) {
  Eigen::VectorXd a(d);
  if (d == 1) a << 1.0;
  if (d == 2) a << 0.6, 0.8;
  if (d == 3) a << 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0;
  return a;
}

// Affine pieces with gradient norms <= 1.
struct AffineMap {
  Eigen::VectorXd a;
  double b;
};

std::vector<AffineMap> affine_family(int d) {
  // Gradients are axis directions and offsets are dyadic, so the kink sets
  // are axis or 45-degree planes through 1/32-lattice points: grid
  // estimators on compatible grids stay below the exact constant 1.
  std::vector<AffineMap> maps;
  if (d == 1) {
    maps.push_back({Eigen::VectorXd::Constant(1, 1.0), -0.0625});
    maps.push_back({Eigen::VectorXd::Constant(1, -1.0), -0.125});
    maps.push_back({Eigen::VectorXd::Constant(1, 0.5), -0.03125});
  } else if (d == 2) {
    Eigen::VectorXd a1(2), a2(2), a3(2);
    a1 << 1.0, 0.0;
    a2 << 0.0, 1.0;
    a3 << -1.0, 0.0;
    maps.push_back({a1, -0.0625});
    maps.push_back({a2, -0.03125});
    maps.push_back({a3, -0.125});
  } else {
    Eigen::VectorXd a1(3), a2(3), a3(3);
    a1 << 1.0, 0.0, 0.0;
    a2 << 0.0, 1.0, 0.0;
    a3 << 0.0, 0.0, -1.0;
    maps.push_back({a1, -0.0625});
    maps.push_back({a2, -0.03125});
    maps.push_back({a3, -0.125});
  }
  return maps;
}

double max_affine_value(const Eigen::VectorXd& x, const std::vector<AffineMap>& maps) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& m : maps) best = std::max(best, m.a.dot(x) + m.b);
  return best;
}

// 1-Lipschitz triangle wave: distance of the first coordinate to 0.5 Z.
double sawtooth_value(double t) {
  const double period = 0.5;
  const double r = t - period * std::floor(t / period);
  return std::min(r, period - r);
}

}  // namespace

std::vector<FunctionOracle> corpus(int d, std::uint64_t seed) {
  if (d < 1 || d > 3) throw ConfigError("corpus: d must be 1, 2 or 3");
  std::vector<FunctionOracle> out;

  out.push_back({"abs", [](const Eigen::VectorXd& x) { return x.norm(); }, 1.0});

  const auto pts = seeded_points(d, seed, 3);
  out.push_back({"dist_points",
                 [pts](const Eigen::VectorXd& x) { return dist_to_set(x, pts); }, 1.0});

  const auto maps = affine_family(d);
  out.push_back({"max_affine",
                 [maps](const Eigen::VectorXd& x) { return max_affine_value(x, maps); },
                 1.0});

  out.push_back(
      {"sawtooth", [](const Eigen::VectorXd& x) { return sawtooth_value(x[0]); }, 1.0});

  const Eigen::VectorXd a = unit_direction(d);
  out.push_back(
      {"signed_linear", [a](const Eigen::VectorXd& x) { return a.dot(x); }, 1.0});

  out.push_back({"abs_l2", [](const Eigen::VectorXd& x) { return 2.0 * x.norm(); }, 2.0});

  out.push_back({"dist_l5",
                 [pts](const Eigen::VectorXd& x) { return 5.0 * dist_to_set(x, pts); },
                 5.0});
  return out;
}

FunctionOracle corpus_member(int d, std::uint64_t seed, const std::string& name) {
  for (auto& o : corpus(d, seed))
    if (o.name == name) return o;
  throw ConfigError("unknown corpus member: " + name);
}

}  // namespace lipsmooth
