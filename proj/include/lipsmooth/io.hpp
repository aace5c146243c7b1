#pragma once

#include <string>

#include "lipsmooth/grid_function.hpp"
#include "lipsmooth/verify.hpp"

namespace lipsmooth {

/// Full-precision decimal text for a double (%.17g, locale-independent).
std::string format_double(double v);

/// Grid file: a text table with the header lines
///   lipsmooth-grid 1 / d / shape / lower / upper
/// followed by one value per line, row-major with axis 0 slowest, full
/// double precision.
void write_grid(const std::string& path, const GridFunction& f);
GridFunction read_grid(const std::string& path);

/// CertReport as a JSON object (deterministic key order and formatting).
std::string report_to_json(const CertReport& report);
void write_report(const std::string& path, const CertReport& report);

/// CSV summary with fixed columns.
std::string csv_header();
std::string csv_row(const CertReport& report);

}  // namespace lipsmooth
