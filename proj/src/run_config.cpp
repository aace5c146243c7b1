#include "lipsmooth/run_config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lipsmooth/corpus.hpp"
#include "lipsmooth/io.hpp"
#include "lipsmooth/pipeline.hpp"
#include "lipsmooth/verify.hpp"

namespace lipsmooth {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': cannot parse number '" + s + "'");
  }
}

long long parse_int(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': cannot parse integer '" + s + "'");
  }
}

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line is not 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "corpus") {
      cfg.corpus_names = split_list(value);
      if (cfg.corpus_names.empty()) throw ConfigError("config field 'corpus' is empty");
    } else if (key == "d") {
      cfg.d = static_cast<int>(parse_int(key, value));
    } else if (key == "box_lower" || key == "box_upper") {
      const auto items = split_list(value);
      Eigen::VectorXd v(static_cast<Eigen::Index>(items.size()));
      for (std::size_t i = 0; i < items.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = parse_double(key, items[i]);
      (key == "box_lower" ? cfg.box_lower : cfg.box_upper) = v;
    } else if (key == "shape") {
      cfg.shape.clear();
      for (const auto& item : split_list(value))
        cfg.shape.push_back(static_cast<Eigen::Index>(parse_int(key, item)));
    } else if (key == "epsilons") {
      cfg.epsilons.clear();
      for (const auto& item : split_list(value))
        cfg.epsilons.push_back(parse_double(key, item));
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "strict") {
      if (value == "true" || value == "1")
        cfg.strict = true;
      else if (value == "false" || value == "0")
        cfg.strict = false;
      else
        throw ConfigError("config field 'strict': expected true/false, got '" + value + "'");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "max_internal_nodes") {
      cfg.max_internal_nodes = static_cast<Eigen::Index>(parse_int(key, value));
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate(const RunConfig& cfg) {
  if (cfg.d < 1 || cfg.d > 3) throw ConfigError("config field 'd': must be 1, 2 or 3");
  if (cfg.box_lower.size() != cfg.d || cfg.box_upper.size() != cfg.d)
    throw ConfigError("config fields 'box_lower'/'box_upper': need exactly d entries");
  for (int i = 0; i < cfg.d; ++i)
    if (!(cfg.box_lower[i] < cfg.box_upper[i]))
      throw ConfigError("config field 'box_lower': must be strictly below box_upper");
  if (static_cast<int>(cfg.shape.size()) != cfg.d)
    throw ConfigError("config field 'shape': need exactly d entries");
  for (auto s : cfg.shape)
    if (s < 2) throw ConfigError("config field 'shape': every entry must be >= 2");
  if (cfg.epsilons.empty()) throw ConfigError("config field 'epsilons': need at least one");
  const auto members = corpus(cfg.d, cfg.seed);
  std::vector<std::string> names = cfg.corpus_names;
  if (names.size() == 1 && names[0] == "all") {
    names.clear();
    for (const auto& m : members) names.push_back(m.name);
  }
  double max_L = 0.0;
  for (const auto& n : names) {
    bool found = false;
    for (const auto& m : members)
      if (m.name == n) {
        found = true;
        max_L = std::max(max_L, m.lip_declared);
      }
    if (!found) throw ConfigError("config field 'corpus': unknown member '" + n + "'");
  }
  for (double eps : cfg.epsilons) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
      std::ostringstream os;
      os << "config field 'epsilons': " << eps << " outside (0, 1)";
      throw ConfigError(os.str());
    }
    // The gluing stage carries a factor-8 error ledger, so the
    // re-parameterized grade eps/8 must land strictly below the 1/16
    // admissibility bound of the transition-function construction.
    if (!(eps / 8.0 < 1.0 / 16.0)) {
      std::ostringstream os;
      os << "config field 'epsilons': " << eps << " rejected: re-parameterized grade eps/8 = "
         << eps / 8.0 << " must lie strictly below 1/16 = 0.0625";
      throw ConfigError(os.str());
    }
    for (double L : {max_L}) {
      if (!(eps / (16.0 * (L + 1.0)) < 1.0 / 16.0)) {
        std::ostringstream os;
        os << "config field 'epsilons': " << eps
           << " rejected: scaling-stage budget eps/(16(L+1)) reaches 1/16 at L = " << L;
        throw ConfigError(os.str());
      }
    }
  }
}

int run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  const auto members = corpus(cfg.d, cfg.seed);
  std::vector<FunctionOracle> selected;
  if (cfg.corpus_names.size() == 1 && cfg.corpus_names[0] == "all") {
    selected = members;
  } else {
    for (const auto& n : cfg.corpus_names) selected.push_back(corpus_member(cfg.d, cfg.seed, n));
  }
  const Box box(cfg.box_lower, cfg.box_upper);

  std::ostringstream csv;
  csv << csv_header() << "\n";
  bool all_pass = true;

  for (const auto& oracle : selected) {
    const GridFunction f = sample(oracle, box, cfg.shape);
    const double lip_est = estimate_lipschitz(f);
    if (lip_est > oracle.lip_declared + 1e-9) {
      std::ostringstream os;
      os << "corpus member '" << oracle.name << "' breaks its declared constant: estimate "
         << lip_est << " > " << oracle.lip_declared;
      throw DomainError(os.str());
    }

    for (double eps : cfg.epsilons) {
      SmoothOptions opts;
      opts.resample_oracle = oracle.evaluate;
      opts.max_internal_nodes = cfg.max_internal_nodes;
      opts.strict = cfg.strict;
      const SmoothResult result = smooth(f, eps, opts);
      const CertReport report = verify_theorem1(f, result, eps, oracle.name);
      all_pass = all_pass && report.pass;

      const fs::path dir = fs::path(cfg.out_dir) / (oracle.name + "_eps" + eps_tag(eps));
      fs::create_directories(dir);
      write_grid((dir / "input.grid").string(), f);
      write_grid((dir / "output.grid").string(), result.g);
      write_report((dir / "report.json").string(), report);

      // Stage functions for plotting: envelope scales at the requested eps.
      GridFunction f_lambda = f, g_ll = f;
      if (lip_est > 1e-12) {
        const EnvelopeParams ep = select_lambda(eps, std::max(lip_est, 1.0));
        f_lambda = moreau_inf(f, ep.lambda);
        g_ll = lasry_lions(f, ep);
      }
      if (cfg.d == 1) {
        std::ofstream plot(dir / "plot.tsv");
        plot << "x\tf\tf_lambda\tg_lasry_lions\tg\n";
        for (Eigen::Index k = 0; k < f.values.size(); ++k) {
          plot << format_double(f.node(k)[0]) << "\t" << format_double(f.values[k]) << "\t"
               << format_double(f_lambda.values[k]) << "\t" << format_double(g_ll.values[k])
               << "\t" << format_double(result.g.values[k]) << "\n";
        }
      } else {
        write_grid((dir / "f_lambda.grid").string(), f_lambda);
        write_grid((dir / "g_lasry_lions.grid").string(), g_ll);
      }

      csv << csv_row(report) << "\n";
      log << oracle.name << " eps=" << eps_tag(eps) << " sup_err="
          << format_double(report.sup_error_measured)
          << " lip_out=" << format_double(report.lip_output_measured)
          << " bound_lip=" << format_double(report.bound_lip)
          << (report.pass ? " PASS" : " FAIL") << "\n";
    }
  }

  std::ofstream summary(fs::path(cfg.out_dir) / "summary.csv");
  summary << csv.str();
  return all_pass ? 0 : 1;
}

}  // namespace lipsmooth
