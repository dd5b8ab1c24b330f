#pragma once

// Positive solutions of the radial profile problem on (0, 1):
//   -z'' - z'/r + (k^2/r^2) z + s z = z^{p-1},  z(1) = 0,
// with z'(0) = 0 for k = 0 and z(0) = 0 for k >= 1. Piecewise-linear finite
// elements in the measure 2 pi r dr on a mesh graded towards r = 0.

#include <vector>

namespace rotwave::radial {

struct RadialOptions {
    int elements = 4000;
    double tol = 1e-12;     // componentwise relative residual for the Newton polish
    int max_fixed_point = 400;
    int max_newton = 50;
};

struct RadialSolution {
    int angular_index = 0;
    double shift = 0.0;
    double p = 0.0;
    std::vector<double> r;      // mesh nodes, r.front() = 0, r.back() = 1
    std::vector<double> z;      // nodal values, z.back() = 0
    double quadratic = 0.0;     // 2 pi int (z'^2 + k^2 z^2/r^2 + s z^2) r dr
    double power = 0.0;         // 2 pi int |z|^p r dr
    double weak_residual = 0.0; // max_i |a(z, phi_i) - (z^{p-1}, phi_i)| / (|phi_i|_a |z|_a)
    int iterations = 0;
    bool converged = false;

    // quadratic / ||z||_p^2
    double quotient() const;
};

// Throws DomainError when the quadratic form is not positive definite
// (s <= -j_{k,1}^2) or p <= 2.
RadialSolution solve_profile(double shift, int angular_index, double p,
                             const RadialOptions& options = {});

// Linear interpolation of the nodal profile.
double interpolate(const RadialSolution& s, double r);

} // namespace rotwave::radial
