#pragma once

#include <utility>
#include <vector>

namespace xh {

struct FitResult {
    double exponent = 0;
    double constant = 0; // multiplier: value ~= constant * n^exponent
    double max_rel_residual = 0;
};

// Least-squares power-law fit on log-log axes. Requires at least 4 points
// with positive abscissae and values.
FitResult asymptotic_fit(const std::vector<std::pair<double, double>>& series);

} // namespace xh
