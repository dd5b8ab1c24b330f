#include "rotwave/specfun.hpp"

#include "rotwave/error.hpp"
#include "rotwave/quadrature.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace rotwave::specfun {

namespace {

constexpr double pi = std::numbers::pi;

const double kCbrt2 = std::cbrt(2.0);

std::string describe(double nu, int k) {
    std::ostringstream os;
    os.precision(17);
    os << "(nu=" << nu << ", k=" << k << ")";
    return os.str();
}

void check_order_index(double nu, int k) {
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("Bessel zero: order must be finite and >= 0");
    if (k < 1) throw DomainError("Bessel zero: index must be >= 1");
    if (nu > kMaxOrder || k > kMaxIndex)
        throw RangeError("Bessel zero " + describe(nu, k) + " outside validated range");
}

// Solve t - atan(t) = w for t >= 0 (w >= 0).
double solve_t_minus_atan(double w) {
    if (w <= 0.0) return 0.0;
    double t = w < 1.0 ? std::cbrt(3.0 * w) : w + 0.5 * pi;
    for (int it = 0; it < 100; ++it) {
        const double t2 = t * t;
        // t - atan t without cancellation for small t
        double g;
        if (t < 1e-3) g = t * t2 * (1.0 / 3.0 - t2 / 5.0 + t2 * t2 / 7.0);
        else g = t - std::atan(t);
        const double dt = (g - w) * (1.0 + t2) / t2;
        t = std::max(0.5 * t, t - dt);
        if (std::abs(dt) <= 1e-15 * t) break;
    }
    return t;
}

double mcmahon(double nu, int k) {
    const double mu = 4.0 * nu * nu;
    const double b = (k + 0.5 * nu - 0.25) * pi;
    const double e = 8.0 * b;
    const double e2 = e * e;
    return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e2) -
           32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e * e2 * e2);
}

double olver(double nu, double airy_magnitude) {
    const double minus_zeta = airy_magnitude / std::cbrt(nu * nu);
    const double w = (2.0 / 3.0) * std::pow(minus_zeta, 1.5);
    const double t = solve_t_minus_atan(w);
    const double z = std::sqrt(1.0 + t * t);
    const double h2 = 2.0 * std::sqrt(minus_zeta) / t;
    const double b0 = -5.0 / (48.0 * minus_zeta * minus_zeta) +
                      (5.0 / (24.0 * t * t * t) + 1.0 / (8.0 * t)) / std::sqrt(minus_zeta);
    const double f1 = 0.5 * z * h2 * b0;
    return nu * z + f1 / nu;
}

} // namespace

double bessel_j(double nu, double x) {
    if (!std::isfinite(nu) || !std::isfinite(x) || nu < 0.0 || x < 0.0)
        throw DomainError("bessel_j: order and argument must be finite and >= 0");
    if (nu > kMaxOrder || x > kMaxArgument)
        throw RangeError("bessel_j: (nu, x) outside validated range");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_j(nu, x);
}

double bessel_j_prime(double nu, double x) {
    if (x == 0.0) {
        if (nu == 1.0) return 0.5;
        return nu > 0.0 && nu < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

Enclosure airy_zero_bracket(int k) {
    if (k < 1) throw DomainError("airy_zero_bracket: k must be >= 1");
    const double c = 3.0 * pi / 8.0;
    return {std::pow(c * (4.0 * k - 1.4), 2.0 / 3.0), std::pow(c * (4.0 * k - 0.965), 2.0 / 3.0)};
}

AiryZero airy_zero(int k) {
    if (k < 1) throw DomainError("airy_zero: k must be >= 1");
    if (k > kMaxIndex) throw RangeError("airy_zero: index outside validated range");
    // Asymptotic T(t), t = 3 pi (4k - 1) / 8, then Newton on Ai.
    const double t = 3.0 * pi * (4.0 * k - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    double x = -std::pow(t, 2.0 / 3.0) *
               (1.0 + t2 * (5.0 / 48.0 - t2 * (5.0 / 36.0 - t2 * 77125.0 / 82944.0)));
    const Enclosure br = airy_zero_bracket(k);
    for (int it = 0; it < 50; ++it) {
        const double f = boost::math::airy_ai(x);
        const double df = boost::math::airy_ai_prime(x);
        const double dx = f / df;
        x -= dx;
        if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
    }
    if (!(-x > br.lower && -x < br.upper))
        throw NumericError("airy_zero: Newton left Breen's bracket at k=" + std::to_string(k));
    return {k, -x};
}

Enclosure qu_wong_enclosure(double nu, int k) {
    if (nu == 0.0) {
        const double base = pi * k - 0.25 * pi;
        return {base, base + 1.0 / (8.0 * pi * (k - 0.25))};
    }
    const double a = airy_zero(k).magnitude;
    const double c13 = std::cbrt(nu);
    const double lower = nu + a / kCbrt2 * c13;
    return {lower, lower + 0.15 * a * a * kCbrt2 / c13};
}

Enclosure zero_enclosure(double nu, int k) {
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("zero_enclosure: order must be >= 0");
    if (k < 1) throw DomainError("zero_enclosure: index must be >= 1");
    if (nu == 0.0) return qu_wong_enclosure(0.0, k);
    const double c13 = std::cbrt(nu);
    const double lo_a = std::pow(3.0 * pi / 8.0 * (4.0 * k - 2.0), 2.0 / 3.0);
    const double hi_a = std::pow(1.5 * pi * k, 2.0 / 3.0);
    return {nu + lo_a / kCbrt2 * c13,
            nu + hi_a / kCbrt2 * c13 + 0.15 * hi_a * hi_a * kCbrt2 / c13};
}

double bessel_j_zero_estimate(double nu, int k) {
    if (k < 1) return nu;
    if (nu < 1.0) return mcmahon(nu, k);
    return olver(nu, airy_zero(k).magnitude);
}

BesselZero bessel_j_zero(double nu, int k) {
    check_order_index(nu, k);

    // Isolating interval: midpoints between neighbouring asymptotic estimates,
    // narrowed by the rigorous enclosures.
    const double g_prev = k == 1 ? nu : bessel_j_zero_estimate(nu, k - 1);
    const double g = bessel_j_zero_estimate(nu, k);
    const double g_next = bessel_j_zero_estimate(nu, k + 1);
    const Enclosure qw = qu_wong_enclosure(nu, k);
    double a = std::max(0.5 * (g_prev + g), qw.lower);
    double b = std::min(0.5 * (g + g_next), qw.upper);
    if (nu > 0.0) {
        const Enclosure cor = zero_enclosure(nu, k);
        a = std::max(a, cor.lower);
        b = std::min(b, cor.upper);
    }
    if (!(a < b))
        throw NumericError("bessel_j_zero " + describe(nu, k) + ": empty isolating interval");

    // For nu = 0 and large k the zero sits within an ulp of the (non-strict)
    // upper bound; allow a few ulp of slack so rounding cannot hide the sign change.
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * b;
    a -= slack;
    b += slack;
    double fa = bessel_j(nu, a);
    double fb = bessel_j(nu, b);
    if (fa == 0.0) return {nu, k, a, qw.lower, qw.upper};
    if (fb == 0.0) return {nu, k, b, qw.lower, qw.upper};
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "bessel_j_zero " << describe(nu, k) << ": no sign change on [" << a << ", " << b
           << "], J = (" << fa << ", " << fb << ")";
        throw NumericError(os.str());
    }

    // Safeguarded Newton inside [a, b].
    double x = std::clamp(g, a, b);
    if (x == a || x == b) x = 0.5 * (a + b);
    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double f = bessel_j(nu, x);
        if (f == 0.0) {
            converged = true;
            break;
        }
        if ((f > 0.0) == (fa > 0.0)) {
            a = x;
            fa = f;
        } else {
            b = x;
        }
        const double df = (nu / x) * f - bessel_j(nu + 1.0, x);
        double next = x - f / df;
        if (!(next > a && next < b) || !std::isfinite(next)) next = 0.5 * (a + b);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 2.0 * eps * x || (b - a) <= 4.0 * eps * x) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os.precision(17);
        os << "bessel_j_zero " << describe(nu, k) << ": refinement did not converge, bracket ["
           << a << ", " << b << "]";
        throw NumericError(os.str());
    }
    if (nu == 0.0) x = std::min(x, qw.upper);
    return {nu, k, x, qw.lower, qw.upper};
}

double mod_bessel_k(int order, double x) {
    if (order != 0 && order != 1) throw DomainError("mod_bessel_k: order must be 0 or 1");
    if (!(x > 0.0)) throw DomainError("mod_bessel_k: argument must be > 0");
    if (x > 700.0) return 0.0;
    return boost::math::cyl_bessel_k(order, x);
}

double bessel_zero_derivative(double nu, int k) {
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("bessel_zero_derivative: order must be >= 0");
    const double j = bessel_j_zero(nu, k).value;
    // K_0(z) < 1e-21 for z > 45: truncate where 2 j sinh t reaches 45.
    const double t_max = std::asinh(45.0 / (2.0 * j));
    auto integrand = [&](double t) {
        const double z = 2.0 * j * std::sinh(t);
        if (z <= 0.0) return 0.0;
        return boost::math::cyl_bessel_k(0, z) * std::exp(-2.0 * nu * t);
    };
    return 2.0 * j * quad::integrate(integrand, 0.0, t_max, 1e-13).value;
}

} // namespace rotwave::specfun
