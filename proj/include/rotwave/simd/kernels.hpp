#pragma once

// Data-parallel inner loops shared by the Galerkin solver and the spectrum
// scans. Every kernel has a portable scalar reference implementation and,
// on x86-64, an AVX2/FMA variant. The active table is chosen once at first
// use from the CPU features, and can be forced with ROTWAVE_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace rotwave::simd {

// Result of a gap reduction over a batch of eigenvalues
// lambda_i = j_i^2 - shift_i with the kernel entries (|lambda| <= tol*j) skipped.
struct GapMinima {
    double min_ratio = 0.0;       // min |lambda_i| / j_i
    std::ptrdiff_t ratio_index = -1;
    double min_abs = 0.0;         // min |lambda_i|
    std::ptrdiff_t abs_index = -1;
};

struct KernelTable {
    std::string_view name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a_i * b_i * c_i
    double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // For each node: s_i = |u_i|^(p-2).
    //   grad[i] = w_i * s_i * u_i
    //   curv[i] = w_i * s_i          (skipped when curv == nullptr)
    // Returns sum_i w_i * s_i * u_i^2 = sum_i w_i |u_i|^p.
    double (*power_terms)(const double* u, const double* w, std::size_t n, double p,
                          double* grad, double* curv);
    GapMinima (*gap_reduce)(const double* j, const double* shift, std::size_t n,
                            double kernel_tol);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

// The dispatched table used by the library.
const KernelTable& active() noexcept;

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}

} // namespace rotwave::simd
