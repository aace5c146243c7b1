#include "lipsmooth/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lipsmooth {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_grid(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "lipsmooth-grid 1\n";
  out << "d " << f.dim() << "\n";
  out << "shape";
  for (auto s : f.shape) out << " " << s;
  out << "\nlower";
  for (int i = 0; i < f.dim(); ++i) out << " " << format_double(f.box.lower(i));
  out << "\nupper";
  for (int i = 0; i < f.dim(); ++i) out << " " << format_double(f.box.upper(i));
  out << "\n";
  for (Eigen::Index k = 0; k < f.values.size(); ++k)
    out << format_double(f.values[k]) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

GridFunction read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "lipsmooth-grid" || version != 1)
    throw IoError("not a lipsmooth grid file: " + path);
  std::string key;
  int d = 0;
  in >> key >> d;
  if (key != "d" || d < 1 || d > 3) throw IoError("bad dimension header in " + path);
  std::vector<Eigen::Index> shape(static_cast<std::size_t>(d));
  in >> key;
  if (key != "shape") throw IoError("bad shape header in " + path);
  for (auto& s : shape) in >> s;
  Eigen::VectorXd lower(d), upper(d);
  in >> key;
  if (key != "lower") throw IoError("bad lower header in " + path);
  for (int i = 0; i < d; ++i) in >> lower[i];
  in >> key;
  if (key != "upper") throw IoError("bad upper header in " + path);
  for (int i = 0; i < d; ++i) in >> upper[i];
  GridFunction g = GridFunction::zeros(Box(lower, upper), shape);
  for (Eigen::Index k = 0; k < g.values.size(); ++k) {
    if (!(in >> g.values[k])) throw IoError("truncated grid file: " + path);
  }
  g.validate();
  return g;
}

namespace {

nlohmann::json stage_to_json(const StageRecord& s) {
  nlohmann::json j;
  j["stage"] = s.stage;
  j["pass"] = s.pass;
  nlohmann::json metrics;
  for (const auto& [k, v] : s.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  return j;
}

}  // namespace

std::string report_to_json(const CertReport& r) {
  nlohmann::json j;
  j["function"] = r.function_name;
  j["epsilon"] = r.epsilon;
  j["L_measured"] = r.L_measured;
  j["sup_error_measured"] = r.sup_error_measured;
  j["lip_output_measured"] = r.lip_output_measured;
  j["bound_sup"] = r.bound_sup;
  j["bound_lip"] = r.bound_lip;
  j["lip_tolerance"] = r.lip_tolerance;
  j["interior_margin"] = r.interior_margin;
  j["path"] = r.path;
  j["pass"] = r.pass;
  j["warnings"] = r.warnings;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stages) stages.push_back(stage_to_json(s));
  j["stages"] = stages;
  return j.dump(2);
}

void write_report(const std::string& path, const CertReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << report_to_json(report) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

std::string csv_header() {
  return "function,epsilon,L,sup_err,lip_out,bound_sup,bound_lip,pass";
}

std::string csv_row(const CertReport& r) {
  std::ostringstream os;
  os << r.function_name << "," << format_double(r.epsilon) << ","
     << format_double(r.L_measured) << "," << format_double(r.sup_error_measured) << ","
     << format_double(r.lip_output_measured) << "," << format_double(r.bound_sup) << ","
     << format_double(r.bound_lip) << "," << (r.pass ? "true" : "false");
  return os.str();
}

}  // namespace lipsmooth
