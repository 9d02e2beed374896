#include "xhermite/fits.hpp"

#include "xhermite/errors.hpp"

#include <cmath>

namespace xh {

FitResult asymptotic_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 4)
        throw DegenerateFit("power-law fit needs at least 4 points, got " +
                            std::to_string(series.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, v] : series) {
        if (!(n > 0) || !(v > 0))
            throw DegenerateFit("power-law fit needs positive samples");
        const double lx = std::log(n), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double count = static_cast<double>(series.size());
    const double denom = count * sxx - sx * sx;
    if (denom == 0) throw DegenerateFit("abscissae are all equal");
    FitResult fit;
    fit.exponent = (count * sxy - sx * sy) / denom;
    fit.constant = std::exp((sy - fit.exponent * sx) / count);
    for (const auto& [n, v] : series) {
        const double model = fit.constant * std::pow(n, fit.exponent);
        fit.max_rel_residual = std::max(fit.max_rel_residual, std::fabs(v - model) / model);
    }
    return fit;
}

} // namespace xh
