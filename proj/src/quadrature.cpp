#include "rotwave/quadrature.hpp"

#include "rotwave/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rotwave::quad {

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi's initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = mid;
    return rule;
}

namespace {

void check(const Integral& r, double l1, double tol, const char* what) {
    if (!std::isfinite(r.value) || r.error > tol * std::max(1.0, l1))
        throw NumericError(std::string(what) + ": quadrature did not converge (value " +
                           std::to_string(r.value) + ", error " + std::to_string(r.error) + ")");
}

} // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    Integral r;
    double l1 = 0.0;
    r.value = integrator.integrate(f, a, b, tol, &r.error, &l1);
    check(r, l1, std::max(tol, 1e-14) * 10.0, "integrate");
    return r;
}

Integral integrate_to_infinity(const std::function<double(double)>& f, double a, double tol) {
    static thread_local boost::math::quadrature::exp_sinh<double> integrator;
    Integral r;
    double l1 = 0.0;
    r.value = integrator.integrate([&](double t) { return f(t); }, a,
                                   std::numeric_limits<double>::infinity(), tol, &r.error, &l1);
    check(r, l1, std::max(tol, 1e-14) * 10.0, "integrate_to_infinity");
    return r;
}

} // namespace rotwave::quad
