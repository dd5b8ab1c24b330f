#pragma once

// Dirichlet spectrum of L_alpha = -Delta + alpha^2 d^2/dtheta^2 (+ m) on the
// unit disk: lambda_{l,k} = j_{l,k}^2 - alpha^2 l^2 + m, the admissible
// velocities alpha_n, and empirical gap constants min |lambda| / j.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace rotwave::spectrum {

inline constexpr double kDefaultKernelTol = 1e-9;

struct AdmissibleAlpha {
    int n = 0;
    double sigma = 0.0;       // 1/n
    double alpha = 0.0;
    double residual = 0.0;    // pi n - (sqrt(alpha^2-1) - (pi/2 - arcsin(1/alpha)))
    double kappa = 0.0;
    std::optional<double> c_empirical;  // filled by callers that run a gap scan
};

// alpha_n = iota(1/n) n, i.e. the root of sqrt(a^2-1) - (pi/2 - arcsin(1/a)) = pi n.
AdmissibleAlpha alpha_n(int n);

// -(pi/4) exp(1/(3n)) + (alpha_n - pi/2)/n.
double kappa_n(int n);

// Smallest n0 <= n_max such that kappa_n > 0 and alpha_n > n for all n in [n0, n_max].
std::optional<int> admissibility_threshold(int n_max);

enum class SignClass { positive, kernel, negative };

std::string_view to_string(SignClass c);

SignClass classify(double lambda, double j, double kernel_tol = kDefaultKernelTol);

struct SpectralPoint {
    int ell = 0;
    int k = 0;
    int branch = 0;        // 0, or +1/-1 for the mu-shifted spectrum
    int multiplicity = 1;  // 2 for l >= 1 in the unshifted spectrum (cos and sin)
    double j_value = 0.0;
    double lambda = 0.0;
    SignClass sign_class = SignClass::positive;
};

struct GapArgmin {
    int ell = -1;
    int k = -1;
    int branch = 0;
};

struct SpectrumWindow {
    double alpha = 0.0;
    double m = 0.0;
    double mu = 0.0;
    int ell_max = 0;
    int k_max = 0;
    double kernel_tol = kDefaultKernelTol;
    std::vector<SpectralPoint> points;  // sorted by lambda, ties by (ell, k, branch)
    double min_abs_nonkernel = 0.0;
    double min_gap_ratio = 0.0;
    GapArgmin argmin;

    // Number of eigenfunctions (cos/sin pairs counted separately).
    std::size_t basis_count() const;
};

// All (l, k) with l <= ell_max, k <= k_max.
SpectrumWindow enumerate_spectrum(double alpha, double m, int ell_max, int k_max,
                                  double kernel_tol = kDefaultKernelTol);

// Only eigenvalues in [lambda_lo, lambda_hi]; (l, k) pairs whose zero enclosure
// maps entirely outside the window are skipped without computing the zero.
SpectrumWindow enumerate_window(double alpha, double m, int ell_max, int k_max,
                                double lambda_lo, double lambda_hi,
                                double kernel_tol = kDefaultKernelTol);

// Both branches j^2 - alpha^2 l^2 +- 2 mu l + m - mu^2 (a single entry for l = 0).
SpectrumWindow shifted_spectrum(double alpha, double m, double mu, int ell_max, int k_max,
                                double kernel_tol = kDefaultKernelTol);

struct GapEstimate {
    double c_estimate = 0.0;        // min over non-kernel entries of |lambda|/j
    GapArgmin argmin;
    double min_abs_nonkernel = 0.0;
    GapArgmin abs_argmin;
    int ell_max = 0;
    int k_max = 0;
    std::size_t zeros_evaluated = 0;
};

// Row scan: in each row lambda = j^2 - s is increasing in k, so both |lambda|/j
// and |lambda| are unimodal with the minimum next to the first j >= sqrt(s).
// Only the zeros around that crossing are computed. Rows run in parallel.
GapEstimate gap_constant(double alpha, double m, int ell_max, int k_max,
                         double kernel_tol = kDefaultKernelTol, double mu = 0.0);

// Same quantity by computing every zero in the rectangle and reducing with the
// SIMD gap kernel. Cost grows like ell_max * k_max.
GapEstimate gap_constant_exhaustive(double alpha, double m, int ell_max, int k_max,
                                    double kernel_tol = kDefaultKernelTol, double mu = 0.0);

struct PositiveMin {
    double lambda = 0.0;
    int ell = -1;
    int k = -1;
};

// Smallest positive non-kernel eigenvalue with l <= ell_max, k <= k_max.
PositiveMin min_positive_eigenvalue(double alpha, double m, int ell_max, int k_max,
                                    double kernel_tol = kDefaultKernelTol);

// (1 + alpha_n) c_n / 2.
double mu_bound(double alpha, double c_n);

struct RatioBracket {
    double lower = 0.0;
    double value = 0.0;  // j_{l,k}/l - alpha
    double upper = 0.0;

    bool contains() const { return lower < value && value < upper; }
};

// Airy-free bracket around j_{l,k}/l - alpha, l >= 1.
RatioBracket ratio_bound_check(double alpha, int ell, int k);

} // namespace rotwave::spectrum
