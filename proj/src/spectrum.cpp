#include "rotwave/spectrum.hpp"

#include "rotwave/error.hpp"
#include "rotwave/parallel.hpp"
#include "rotwave/simd/kernels.hpp"
#include "rotwave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace rotwave::spectrum {

namespace {

constexpr double pi = std::numbers::pi;

void check_cutoffs(int ell_max, int k_max) {
    if (ell_max < 0 || k_max < 1) throw DomainError("spectrum: requires ell_max >= 0 and k_max >= 1");
    if (ell_max > specfun::kMaxOrder || k_max > specfun::kMaxIndex)
        throw RangeError("spectrum: cutoffs beyond the validated zero range");
}

// One (l, branch) row: lambda = j_{l,k}^2 - shift.
struct Row {
    int ell = 0;
    int branch = 0;
    double shift = 0.0;
};

std::vector<Row> make_rows(double alpha, double m, double mu, int ell_max) {
    std::vector<Row> rows;
    for (int l = 0; l <= ell_max; ++l) {
        const double base = alpha * alpha * l * l - m + mu * mu;
        if (mu == 0.0 || l == 0) {
            rows.push_back({l, 0, base});
        } else {
            rows.push_back({l, +1, base - 2.0 * mu * l});
            rows.push_back({l, -1, base + 2.0 * mu * l});
        }
    }
    return rows;
}

// Zeros of one row, computed on demand.
class RowZeros {
public:
    explicit RowZeros(int ell) : ell_(ell) {}

    double operator()(int k) {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        const double j = specfun::bessel_j_zero(ell_, k).value;
        cache_.emplace(k, j);
        return j;
    }

    std::size_t evaluated() const { return cache_.size(); }

private:
    int ell_;
    std::map<int, double> cache_;
};

// Number of zeros of J_l below s from the Debye phase (approximate).
int zero_count_estimate(int ell, double s) {
    if (s <= ell) return 0;
    const double phase = std::sqrt(s * s - double(ell) * ell) - ell * std::acos(ell / s);
    return std::max(0, static_cast<int>(std::floor(phase / pi + 0.25)));
}

// First k in [1, k_max + 1] with j_k >= s (k_max + 1 when none in range).
int first_at_least(RowZeros& zeros, int ell, double s, int k_max) {
    int k = std::clamp(zero_count_estimate(ell, s) + 1, 1, k_max + 1);
    while (k > 1 && zeros(k - 1) >= s) --k;
    while (k <= k_max && zeros(k) < s) ++k;
    return k;
}

struct RowMin {
    double ratio = std::numeric_limits<double>::infinity();
    int ratio_k = -1;
    double abs = std::numeric_limits<double>::infinity();
    int abs_k = -1;
    std::size_t evaluated = 0;
};

RowMin scan_row(const Row& row, int k_max, double kernel_tol) {
    RowZeros zeros(row.ell);
    RowMin out;
    auto consider = [&](int k) {
        const double j = zeros(k);
        const double lambda = j * j - row.shift;
        if (std::abs(lambda) <= kernel_tol * j) return false;
        const double ratio = std::abs(lambda) / j;
        if (ratio < out.ratio || (ratio == out.ratio && k < out.ratio_k)) {
            out.ratio = ratio;
            out.ratio_k = k;
        }
        if (std::abs(lambda) < out.abs || (std::abs(lambda) == out.abs && k < out.abs_k)) {
            out.abs = std::abs(lambda);
            out.abs_k = k;
        }
        return true;
    };

    if (row.shift <= 0.0) {
        // lambda > 0 throughout; |lambda| is smallest at k = 1 and
        // lambda/j = j + |shift|/j is convex in j, minimal near j = sqrt(|shift|).
        consider(1);
        const int kc = first_at_least(zeros, row.ell, std::sqrt(-row.shift), k_max);
        for (int k : {kc - 1, kc})
            if (k >= 1 && k <= k_max) consider(k);
    } else {
        // Both |lambda|/j and |lambda| decrease while j < sqrt(shift) and
        // increase afterwards; kernel entries sit at the crossing.
        const int kc = first_at_least(zeros, row.ell, std::sqrt(row.shift), k_max);
        for (int k = kc - 1; k >= 1; --k)
            if (consider(k)) break;
        for (int k = kc; k <= k_max; ++k)
            if (consider(k)) break;
    }
    out.evaluated = zeros.evaluated();
    return out;
}

GapEstimate merge(const std::vector<Row>& rows, const std::vector<RowMin>& mins, int ell_max,
                  int k_max) {
    GapEstimate g;
    g.ell_max = ell_max;
    g.k_max = k_max;
    g.c_estimate = std::numeric_limits<double>::infinity();
    g.min_abs_nonkernel = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RowMin& r = mins[i];
        g.zeros_evaluated += r.evaluated;
        if (r.ratio_k > 0 && r.ratio < g.c_estimate) {
            g.c_estimate = r.ratio;
            g.argmin = {rows[i].ell, r.ratio_k, rows[i].branch};
        }
        if (r.abs_k > 0 && r.abs < g.min_abs_nonkernel) {
            g.min_abs_nonkernel = r.abs;
            g.abs_argmin = {rows[i].ell, r.abs_k, rows[i].branch};
        }
    }
    if (g.argmin.ell < 0) throw ConfigError("gap_constant: every entry in the cutoff is kernel");
    return g;
}

void finish_window(SpectrumWindow& w) {
    std::sort(w.points.begin(), w.points.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.ell != b.ell) return a.ell < b.ell;
        if (a.k != b.k) return a.k < b.k;
        return a.branch < b.branch;
    });
    std::vector<double> j, shift;
    j.reserve(w.points.size());
    shift.reserve(w.points.size());
    for (const auto& p : w.points) {
        j.push_back(p.j_value);
        shift.push_back(p.j_value * p.j_value - p.lambda);
    }
    const simd::GapMinima g = simd::active().gap_reduce(j.data(), shift.data(), j.size(), w.kernel_tol);
    if (g.ratio_index < 0) {
        w.min_gap_ratio = std::numeric_limits<double>::quiet_NaN();
        w.min_abs_nonkernel = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    w.min_gap_ratio = g.min_ratio;
    w.min_abs_nonkernel = g.min_abs;
    const auto& p = w.points[static_cast<std::size_t>(g.ratio_index)];
    w.argmin = {p.ell, p.k, p.branch};
}

SpectrumWindow enumerate_rows(double alpha, double m, double mu, int ell_max, int k_max,
                              double kernel_tol, double lo, double hi) {
    check_cutoffs(ell_max, k_max);
    SpectrumWindow w;
    w.alpha = alpha;
    w.m = m;
    w.mu = mu;
    w.ell_max = ell_max;
    w.k_max = k_max;
    w.kernel_tol = kernel_tol;
    const bool windowed = lo > -std::numeric_limits<double>::infinity() ||
                          hi < std::numeric_limits<double>::infinity();

    const std::vector<Row> rows = make_rows(alpha, m, mu, ell_max);
    std::vector<std::vector<SpectralPoint>> per_row(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const Row& row = rows[i];
        const int mult = (mu == 0.0 && row.ell > 0) ? 2 : 1;
        for (int k = 1; k <= k_max; ++k) {
            if (windowed) {
                const specfun::Enclosure e = specfun::zero_enclosure(row.ell, k);
                if (e.lower * e.lower - row.shift > hi) break;  // enclosures increase with k
                if (e.upper * e.upper - row.shift < lo) continue;
            }
            const double j = specfun::bessel_j_zero(row.ell, k).value;
            const double lambda = j * j - row.shift;
            if (windowed && (lambda < lo || lambda > hi)) continue;
            per_row[i].push_back({row.ell, k, row.branch, mult, j, lambda,
                                  classify(lambda, j, kernel_tol)});
        }
    });
    for (auto& r : per_row) w.points.insert(w.points.end(), r.begin(), r.end());
    finish_window(w);
    return w;
}

} // namespace

AdmissibleAlpha alpha_n(int n) {
    if (n < 1) throw DomainError("alpha_n: requires n >= 1");
    // t = sqrt(alpha^2 - 1) solves t - atan(t) = pi n; Newton from t = pi n + pi/2.
    const double target = pi * n;
    double t = target + 0.5 * pi;
    for (int it = 0; it < 100; ++it) {
        const double dt = (t - std::atan(t) - target) * (1.0 + t * t) / (t * t);
        t -= dt;
        if (std::abs(dt) <= 1e-16 * t) break;
    }
    AdmissibleAlpha a;
    a.n = n;
    a.sigma = 1.0 / n;
    a.alpha = std::sqrt(1.0 + t * t);
    a.residual = target - (std::sqrt(a.alpha * a.alpha - 1.0) - (0.5 * pi - std::asin(1.0 / a.alpha)));
    a.kappa = -0.25 * pi * std::exp(1.0 / (3.0 * n)) + (a.alpha - 0.5 * pi) / n;
    return a;
}

double kappa_n(int n) { return alpha_n(n).kappa; }

std::optional<int> admissibility_threshold(int n_max) {
    if (n_max < 1) throw DomainError("admissibility_threshold: requires n_max >= 1");
    std::optional<int> n0;
    for (int n = n_max; n >= 1; --n) {
        const AdmissibleAlpha a = alpha_n(n);
        if (!(a.kappa > 0.0 && a.alpha > n)) break;
        n0 = n;
    }
    return n0;
}

std::string_view to_string(SignClass c) {
    switch (c) {
    case SignClass::positive: return "positive";
    case SignClass::kernel: return "kernel";
    case SignClass::negative: return "negative";
    }
    return "?";
}

SignClass classify(double lambda, double j, double kernel_tol) {
    if (std::abs(lambda) <= kernel_tol * j) return SignClass::kernel;
    return lambda > 0.0 ? SignClass::positive : SignClass::negative;
}

std::size_t SpectrumWindow::basis_count() const {
    std::size_t n = 0;
    for (const auto& p : points) n += static_cast<std::size_t>(p.multiplicity);
    return n;
}

SpectrumWindow enumerate_spectrum(double alpha, double m, int ell_max, int k_max, double kernel_tol) {
    const double inf = std::numeric_limits<double>::infinity();
    return enumerate_rows(alpha, m, 0.0, ell_max, k_max, kernel_tol, -inf, inf);
}

SpectrumWindow enumerate_window(double alpha, double m, int ell_max, int k_max, double lambda_lo,
                                double lambda_hi, double kernel_tol) {
    if (!(lambda_lo <= lambda_hi)) throw DomainError("enumerate_window: requires lambda_lo <= lambda_hi");
    return enumerate_rows(alpha, m, 0.0, ell_max, k_max, kernel_tol, lambda_lo, lambda_hi);
}

SpectrumWindow shifted_spectrum(double alpha, double m, double mu, int ell_max, int k_max,
                                double kernel_tol) {
    const double inf = std::numeric_limits<double>::infinity();
    return enumerate_rows(alpha, m, mu, ell_max, k_max, kernel_tol, -inf, inf);
}

GapEstimate gap_constant(double alpha, double m, int ell_max, int k_max, double kernel_tol, double mu) {
    check_cutoffs(ell_max, k_max);
    const std::vector<Row> rows = make_rows(alpha, m, mu, ell_max);
    std::vector<RowMin> mins(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) { mins[i] = scan_row(rows[i], k_max, kernel_tol); });
    return merge(rows, mins, ell_max, k_max);
}

GapEstimate gap_constant_exhaustive(double alpha, double m, int ell_max, int k_max,
                                    double kernel_tol, double mu) {
    check_cutoffs(ell_max, k_max);
    const std::vector<Row> rows = make_rows(alpha, m, mu, ell_max);
    std::vector<RowMin> mins(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        std::vector<double> j(static_cast<std::size_t>(k_max));
        for (int k = 1; k <= k_max; ++k) j[k - 1] = specfun::bessel_j_zero(rows[i].ell, k).value;
        const std::vector<double> shift(j.size(), rows[i].shift);
        const simd::GapMinima g = simd::active().gap_reduce(j.data(), shift.data(), j.size(), kernel_tol);
        RowMin& r = mins[i];
        r.evaluated = j.size();
        if (g.ratio_index >= 0) {
            r.ratio = g.min_ratio;
            r.ratio_k = static_cast<int>(g.ratio_index) + 1;
            r.abs = g.min_abs;
            r.abs_k = static_cast<int>(g.abs_index) + 1;
        }
    });
    return merge(rows, mins, ell_max, k_max);
}

PositiveMin min_positive_eigenvalue(double alpha, double m, int ell_max, int k_max, double kernel_tol) {
    check_cutoffs(ell_max, k_max);
    const std::vector<Row> rows = make_rows(alpha, m, 0.0, ell_max);
    std::vector<PositiveMin> best(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const Row& row = rows[i];
        RowZeros zeros(row.ell);
        // lambda is increasing in k: the first positive non-kernel entry is the row minimum
        int k = row.shift <= 0.0 ? 1 : first_at_least(zeros, row.ell, std::sqrt(row.shift), k_max);
        for (; k <= k_max; ++k) {
            const double j = zeros(k);
            const double lambda = j * j - row.shift;
            if (classify(lambda, j, kernel_tol) == SignClass::positive) {
                best[i] = {lambda, row.ell, k};
                break;
            }
        }
    });
    PositiveMin out;
    out.lambda = std::numeric_limits<double>::infinity();
    for (const auto& b : best)
        if (b.ell >= 0 && b.lambda < out.lambda) out = b;
    if (out.ell < 0) throw ConfigError("min_positive_eigenvalue: no positive eigenvalue in the cutoff");
    return out;
}

double mu_bound(double alpha, double c_n) { return 0.5 * (1.0 + alpha) * c_n; }

RatioBracket ratio_bound_check(double alpha, int ell, int k) {
    if (ell < 1 || k < 1) throw DomainError("ratio_bound_check: requires l >= 1 and k >= 1");
    const double l13 = std::cbrt(double(ell));
    const double l23 = l13 * l13;
    const double c2 = std::cbrt(2.0);
    const double lo_a = std::pow(3.0 * pi / 8.0 * (4.0 * k - 2.0), 2.0 / 3.0);
    const double hi_a = std::pow(1.5 * pi * k, 2.0 / 3.0);
    RatioBracket b;
    b.lower = 1.0 - alpha + lo_a / c2 / l23;
    b.upper = 1.0 - alpha + hi_a / c2 / l23 + 0.15 * hi_a * hi_a * c2 / (l23 * l23);
    b.value = specfun::bessel_j_zero(ell, k).value / ell - alpha;
    return b;
}

} // namespace rotwave::spectrum
