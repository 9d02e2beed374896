#include "xhermite/report.hpp"

#include "xhermite/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace xh {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const MpReal& v, unsigned digits10) {
    return v.str(digits10, std::ios_base::scientific);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

namespace {

double nearest_residual(const MpComplex& z, const HRoots& proots) {
    if (proots.roots.empty()) return 0;
    std::size_t best = 0;
    MpReal bestd = abs(z - proots.roots[0]);
    for (std::size_t i = 1; i < proots.roots.size(); ++i) {
        MpReal d = abs(z - proots.roots[i]);
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    if (best < proots.residual.size()) return proots.residual[best].convert_to<double>();
    return 0;
}

} // namespace

std::string zeros_csv(const ZeroSet& zs, const HRoots& proots) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& z : zs.exceptional) {
        rows.push_back({"exceptional", fmt(z.re, 25), fmt(z.im, 25),
                        fmt(nearest_residual(z, proots))});
    }
    for (const auto& x : zs.regular) {
        rows.push_back({"regular", fmt(x, 25), fmt(MpReal(0), 25),
                        fmt(nearest_residual(MpComplex(x, MpReal(0)), proots))});
    }
    return csv({"kind", "re", "im", "residual"}, rows);
}

std::string matrix_csv(const Mat& a) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            rows.push_back({std::to_string(i), std::to_string(j), fmt(a(i, j))});
    return csv({"i", "j", "value"}, rows);
}

std::string fit_csv(const std::vector<double>& xs, const std::vector<double>& ys,
                    double exponent, double constant) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        double model = constant * std::pow(xs[i], exponent);
        rows.push_back({fmt(xs[i]), fmt(ys[i]), fmt(model)});
    }
    return csv({"x", "y", "model"}, rows);
}

nlohmann::ordered_json gersgorin_json(const GersgorinReport& r) {
    nlohmann::ordered_json j;
    j["dominant"] = r.dominance.dominant;
    j["margins"] = r.dominance.margins;
    auto ival = [](const Interval& iv) {
        return nlohmann::ordered_json{{"lo", iv.lo}, {"hi", iv.hi}};
    };
    nlohmann::ordered_json ge = nlohmann::ordered_json::array();
    for (const auto& block : r.g_e) {
        nlohmann::ordered_json b = nlohmann::ordered_json::array();
        for (const auto& iv : block) b.push_back(ival(iv));
        ge.push_back(b);
    }
    j["G_e"] = ge;
    nlohmann::ordered_json gr = nlohmann::ordered_json::array();
    for (const auto& iv : r.g_r) gr.push_back(ival(iv));
    j["G_r"] = gr;
    j["U"] = r.U;
    j["V"] = r.V;
    j["R"] = r.R;
    j["eigenvalues"] = r.eigenvalues;
    j["containment"] = r.containment;
    j["all_contained"] = r.all_contained;
    j["g_r_negative"] = r.g_r_negative;
    return j;
}

nlohmann::ordered_json maximum_json(const MaximumVerdict& v) {
    nlohmann::ordered_json j;
    j["stationarity_max"] = v.stationarity_max;
    j["hessian_max_eigenvalue"] = v.hessian_max_eigenvalue;
    j["trials"] = v.trials;
    j["failures"] = v.failures;
    j["seed"] = v.seed;
    j["passed"] = v.passed();
    return j;
}

} // namespace xh
