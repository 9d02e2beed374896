#include "xhermite/matrix.hpp"

#include "xhermite/errors.hpp"

#include <algorithm>
#include <cmath>

namespace xh {

double frobenius_norm(const Mat& m) {
    double s = 0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

double max_abs(const Mat& m) {
    double s = 0;
    for (double v : m.a) s = std::max(s, std::fabs(v));
    return s;
}

namespace {

double off_diag(const Mat& m) {
    double s = 0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

} // namespace

std::vector<double> symmetric_eigenvalues(Mat m) {
    if (m.rows != m.cols) throw NotSymmetric("matrix is not square");
    const int n = m.rows;
    const double scale = std::max(max_abs(m), 1e-300);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw NotSymmetric("asymmetry exceeds tolerance at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");

    const double target = 1e-13 * std::max(frobenius_norm(m), 1e-300);
    for (int sweep = 0; sweep < 100 && off_diag(m) > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace xh
