#pragma once

// Independent reference values for the tests: MPFR power series for J_nu and
// Ai with bisection for their zeros, a long double trapezoid rule for K_0/K_1,
// and a small fixed-seed generator for property tests.

#include <mpfr.h>

#include <cmath>
#include <cstdint>

namespace oracle {

constexpr mpfr_prec_t kPrec = 320;

class Mp {
public:
    Mp() { mpfr_init2(v, kPrec); mpfr_set_zero(v, 1); }
    explicit Mp(double x) { mpfr_init2(v, kPrec); mpfr_set_d(v, x, MPFR_RNDN); }
    Mp(const Mp& o) { mpfr_init2(v, kPrec); mpfr_set(v, o.v, MPFR_RNDN); }
    Mp& operator=(const Mp& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
    ~Mp() { mpfr_clear(v); }
    double get() const { return mpfr_get_d(v, MPFR_RNDN); }
    mpfr_t v;
};

// J_nu(x) = sum_m (-1)^m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)), summed until the
// terms drop below 2^-300 of the largest one.
inline Mp bessel_j(double nu, const Mp& x) {
    Mp half, term, sum, x2, tmp, g;
    mpfr_div_ui(half.v, x.v, 2, MPFR_RNDN);
    // first term (x/2)^nu / Gamma(nu+1)
    mpfr_set_d(tmp.v, nu, MPFR_RNDN);
    mpfr_pow(term.v, half.v, tmp.v, MPFR_RNDN);
    mpfr_set_d(g.v, nu + 1.0, MPFR_RNDN);
    mpfr_gamma(g.v, g.v, MPFR_RNDN);
    mpfr_div(term.v, term.v, g.v, MPFR_RNDN);
    mpfr_sqr(x2.v, half.v, MPFR_RNDN);
    mpfr_set(sum.v, term.v, MPFR_RNDN);
    Mp biggest(term);
    mpfr_abs(biggest.v, biggest.v, MPFR_RNDN);
    for (int m = 1; m < 100000; ++m) {
        // term *= -(x/2)^2 / (m (m + nu))
        mpfr_mul(term.v, term.v, x2.v, MPFR_RNDN);
        mpfr_set_d(tmp.v, m * (m + nu), MPFR_RNDN);
        mpfr_div(term.v, term.v, tmp.v, MPFR_RNDN);
        mpfr_neg(term.v, term.v, MPFR_RNDN);
        mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
        mpfr_abs(tmp.v, term.v, MPFR_RNDN);
        if (mpfr_cmp(tmp.v, biggest.v) > 0) {
            mpfr_set(biggest.v, tmp.v, MPFR_RNDN);
        } else {
            mpfr_mul_2si(g.v, biggest.v, -300, MPFR_RNDN);
            if (mpfr_cmp(tmp.v, g.v) < 0) break;
        }
    }
    return sum;
}

inline double bessel_j(double nu, double x) { return bessel_j(nu, Mp(x)).get(); }

// Ai(x) from its Maclaurin series.
inline Mp airy_ai(const Mp& x) {
    Mp c1, c2, f, g, tf, tg, x3, tmp;
    // Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3)
    mpfr_set_ui(tmp.v, 2, MPFR_RNDN);
    mpfr_div_ui(tmp.v, tmp.v, 3, MPFR_RNDN);
    mpfr_gamma(c1.v, tmp.v, MPFR_RNDN);
    mpfr_set_ui(tmp.v, 3, MPFR_RNDN);
    mpfr_cbrt(tmp.v, tmp.v, MPFR_RNDN);
    mpfr_sqr(tmp.v, tmp.v, MPFR_RNDN);
    mpfr_mul(c1.v, c1.v, tmp.v, MPFR_RNDN);
    mpfr_ui_div(c1.v, 1, c1.v, MPFR_RNDN);
    mpfr_set_ui(tmp.v, 1, MPFR_RNDN);
    mpfr_div_ui(tmp.v, tmp.v, 3, MPFR_RNDN);
    mpfr_gamma(c2.v, tmp.v, MPFR_RNDN);
    mpfr_set_ui(tmp.v, 3, MPFR_RNDN);
    mpfr_cbrt(tmp.v, tmp.v, MPFR_RNDN);
    mpfr_mul(c2.v, c2.v, tmp.v, MPFR_RNDN);
    mpfr_ui_div(c2.v, 1, c2.v, MPFR_RNDN);
    // f = sum x^{3k} prod (3j-2)/(3j)!..., built by recurrences
    mpfr_set_ui(tf.v, 1, MPFR_RNDN);
    mpfr_set(tg.v, x.v, MPFR_RNDN);
    mpfr_set(f.v, tf.v, MPFR_RNDN);
    mpfr_set(g.v, tg.v, MPFR_RNDN);
    mpfr_pow_ui(x3.v, x.v, 3, MPFR_RNDN);
    for (unsigned k = 1; k < 2000; ++k) {
        // tf_k = tf_{k-1} x^3 / ((3k-1)(3k)), tg_k = tg_{k-1} x^3 / ((3k)(3k+1))
        mpfr_mul(tf.v, tf.v, x3.v, MPFR_RNDN);
        mpfr_div_ui(tf.v, tf.v, (3 * k - 1) * (3 * k), MPFR_RNDN);
        mpfr_mul(tg.v, tg.v, x3.v, MPFR_RNDN);
        mpfr_div_ui(tg.v, tg.v, (3 * k) * (3 * k + 1), MPFR_RNDN);
        mpfr_add(f.v, f.v, tf.v, MPFR_RNDN);
        mpfr_add(g.v, g.v, tg.v, MPFR_RNDN);
        if (k > 10 && mpfr_get_exp(tf.v) < -350 && mpfr_get_exp(tg.v) < -350) break;
    }
    Mp out;
    mpfr_mul(out.v, c1.v, f.v, MPFR_RNDN);
    mpfr_mul(tmp.v, c2.v, g.v, MPFR_RNDN);
    mpfr_sub(out.v, out.v, tmp.v, MPFR_RNDN);
    return out;
}

// Bisection on a sign change of fn in [lo, hi], carried out in MPFR.
template <class Fn>
double bisect(Fn fn, double lo, double hi, int steps = 90) {
    Mp a(lo), b(hi), mid;
    const int sa = mpfr_sgn(fn(a).v);
    for (int i = 0; i < steps; ++i) {
        mpfr_add(mid.v, a.v, b.v, MPFR_RNDN);
        mpfr_div_ui(mid.v, mid.v, 2, MPFR_RNDN);
        const int sm = mpfr_sgn(fn(mid).v);
        if (sm == 0) return mid.get();
        if (sm == sa) mpfr_set(a.v, mid.v, MPFR_RNDN);
        else mpfr_set(b.v, mid.v, MPFR_RNDN);
    }
    mpfr_add(mid.v, a.v, b.v, MPFR_RNDN);
    mpfr_div_ui(mid.v, mid.v, 2, MPFR_RNDN);
    return mid.get();
}

// Zero of J_nu inside (lo, hi); the caller supplies an isolating bracket.
inline double bessel_zero(double nu, double lo, double hi) {
    return bisect([nu](const Mp& x) { return bessel_j(nu, x); }, lo, hi);
}

// |a_k| for a zero of Ai inside (-hi, -lo).
inline double airy_zero_magnitude(double lo, double hi) {
    return -bisect([](const Mp& x) { return airy_ai(x); }, -hi, -lo);
}

// K_n(x) = int_0^inf exp(-x cosh t) cosh(n t) dt, trapezoid in long double
// (the integrand is analytic and decays doubly exponentially).
inline double bessel_k(int n, double x) {
    const long double h = 1.0L / 64;
    long double s = 0.5L * std::exp(-(long double)x);
    for (int i = 1; i < 64 * 40; ++i) {
        const long double t = i * h;
        const long double term = std::exp(-(long double)x * std::cosh(t)) * std::cosh(n * t);
        s += term;
        if (term < 1e-30L * s) break;
    }
    return static_cast<double>(s * h);
}

// SplitMix64 with a fixed seed per test.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    double normal() {
        const double u1 = uniform() + 1e-300, u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace oracle
