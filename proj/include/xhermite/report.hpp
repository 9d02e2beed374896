#pragma once

#include "xhermite/gersgorin.hpp"
#include "xhermite/matrix.hpp"
#include "xhermite/mp.hpp"
#include "xhermite/optimality.hpp"
#include "xhermite/zeros.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace xh {

// Shortest round-trip double formatting ("%.17g", C locale conventions).
std::string fmt(double v);
std::string fmt(const MpReal& v, unsigned digits10 = 20);

// Deterministic text output: LF newlines, no timestamps.
void write_file(const std::string& path, const std::string& content);

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

// kind,re,im,residual — residual matched by nearest root of the source list.
std::string zeros_csv(const ZeroSet& zs, const HRoots& proots);

// i,j,value (row-major, all entries)
std::string matrix_csv(const Mat& a);

// x,y,model — one row per sample under the fitted power law.
std::string fit_csv(const std::vector<double>& xs, const std::vector<double>& ys,
                    double exponent, double constant);

nlohmann::ordered_json gersgorin_json(const GersgorinReport& r);
nlohmann::ordered_json maximum_json(const MaximumVerdict& v);

} // namespace xh
