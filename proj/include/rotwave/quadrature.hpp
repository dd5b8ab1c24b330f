#pragma once

#include <functional>
#include <vector>

namespace rotwave::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// Double-exponential quadrature on a finite interval; tolerates integrable
// endpoint singularities. Throws NumericError when the error estimate exceeds
// tol * max(1, L1 norm).
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-12);

// Same on [a, inf).
Integral integrate_to_infinity(const std::function<double(double)>& f, double a,
                               double tol = 1e-12);

} // namespace rotwave::quad
