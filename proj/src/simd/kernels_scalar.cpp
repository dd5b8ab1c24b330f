#include "rotwave/simd/kernels.hpp"

#include <cmath>
#include <limits>

namespace rotwave::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double power_terms_scalar(const double* u, const double* w, std::size_t n, double p,
                          double* grad, double* curv) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(u[i]);
        const double s = a > 1e-300 ? std::pow(a, p - 2.0) : 0.0;
        const double ws = w[i] * s;
        grad[i] = ws * u[i];
        if (curv) curv[i] = ws;
        total += ws * u[i] * u[i];
    }
    return total;
}

GapMinima gap_reduce_scalar(const double* j, const double* shift, std::size_t n,
                            double kernel_tol) {
    GapMinima g;
    g.min_ratio = std::numeric_limits<double>::infinity();
    g.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = std::abs(j[i] * j[i] - shift[i]);
        if (lam <= kernel_tol * j[i]) continue;
        const double ratio = lam / j[i];
        if (ratio < g.min_ratio) {
            g.min_ratio = ratio;
            g.ratio_index = static_cast<std::ptrdiff_t>(i);
        }
        if (lam < g.min_abs) {
            g.min_abs = lam;
            g.abs_index = static_cast<std::ptrdiff_t>(i);
        }
    }
    return g;
}

} // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{"scalar",          dot_scalar,       dot3_scalar,
                                   axpy_scalar,       power_terms_scalar, gap_reduce_scalar};
    return table;
}

} // namespace rotwave::simd
