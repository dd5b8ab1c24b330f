#pragma once

// Bessel J of real order, its positive zeros with rigorous enclosures,
// negative zeros of the Airy function, and K_0/K_1.

#include <utility>

namespace rotwave::specfun {

// Validated range of the zero engine. Orders up to 5000 cover the
// 4000 x 4000 spectral windows; indices up to 10^4.
inline constexpr double kMaxOrder = 5000.0;
inline constexpr int kMaxIndex = 10000;
inline constexpr double kMaxArgument = 1.0e5;

struct Enclosure {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double x) const { return lower < x && x < upper; }
};

// k-th positive zero of J_nu with the two-sided Qu-Wong (nu > 0) or
// Elbert-Laforgia (nu = 0) enclosure.
struct BesselZero {
    double order = 0.0;
    int index = 0;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

// k-th negative zero a_k of Ai, stored as |a_k|.
struct AiryZero {
    int index = 0;
    double magnitude = 0.0;
};

// J_nu(x) for 0 <= nu <= kMaxOrder, 0 <= x <= kMaxArgument.
// Throws DomainError for negative or non-finite input, RangeError beyond the range.
double bessel_j(double nu, double x);

// d/dx J_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x).
double bessel_j_prime(double nu, double x);

AiryZero airy_zero(int k);

// Breen's bracket ((3pi/8)(4k-1.4))^(2/3) < |a_k| < ((3pi/8)(4k-0.965))^(2/3).
Enclosure airy_zero_bracket(int k);

BesselZero bessel_j_zero(double nu, int k);

// Initial approximation used by bessel_j_zero: McMahon's expansion for nu < 1,
// the first two terms of Olver's uniform expansion otherwise.
double bessel_j_zero_estimate(double nu, int k);

// Qu-Wong bracket nu + |a_k| 2^{-1/3} nu^{1/3} < j < ... + (3/20)|a_k|^2 2^{1/3} nu^{-1/3}
// for nu > 0, or pi k - pi/4 < j <= pi k - pi/4 + 1/(8 pi (k - 1/4)) for nu = 0.
Enclosure qu_wong_enclosure(double nu, int k);

// Airy-free bracket obtained by inserting Breen's bounds into the Qu-Wong
// bracket; for nu = 0 the same Elbert-Laforgia bracket as above.
Enclosure zero_enclosure(double nu, int k);

// K_0 or K_1 at x > 0.
double mod_bessel_k(int order, double x);

// d j_{nu,k} / d nu from Watson's integral 2 j int_0^inf K_0(2 j sinh t) e^{-2 nu t} dt.
double bessel_zero_derivative(double nu, int k);

} // namespace rotwave::specfun
