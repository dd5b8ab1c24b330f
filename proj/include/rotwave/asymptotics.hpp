#pragma once

// Large-index behaviour of Bessel zeros along rays nu = x k:
// the limit iota(x) = lim j_{xk,k}/k, its inverse relation, the ODE it
// satisfies, and a scan of the two-sided finite-k correction.

#include <cstddef>
#include <optional>
#include <vector>

namespace rotwave::asymptotics {

struct IotaPoint {
    double x = 0.0;
    double phi = 0.0;  // angle in [-pi/2, pi/2]
    double iota = 0.0;
};

// Solves sin(phi) / (cos(phi) - (pi/2 - phi) sin(phi)) = x/pi.
// Throws DomainError for x <= -1.
IotaPoint iota(double x);

// iota(x)/x for x > 0.
double iota_ratio(double x);

// Inverse of x -> iota(x)/x:  pi / (sqrt(y^2-1) - (pi/2 - arcsin(1/y))), y > 1.
double f_inverse(double y);

// arccos(x/y) / sqrt(1 - (x/y)^2), the right-hand side of d iota/dx.
double G_closed(double y, double x);

// t -> arccos(1/t)/sqrt(1 - 1/t^2) on t > 1 (value 1 at t = 1).
double g_ratio(double t);

struct IotaTable {
    std::vector<double> x;
    std::vector<double> iota;
    std::size_t steps = 0;  // integrator steps taken
};

// Integrates d iota/dx = G_closed(iota, x), iota(0) = pi, with the adaptive
// Dormand-Prince 5(4) pair (dense output). Sampled every dx on [0, x_max],
// with x_max always the last sample.
IotaTable iota_via_ode(double x_max, double rtol = 1e-10, double dx = 0.05);

// j_{xk,k} / k.
double iota_k(double x, int k);

struct SandwichRow {
    int k = 0;
    double ratio_minus_iota = 0.0;  // j_{xk,k}/k - iota(x)
    double lower_bound = 0.0;       // -exp((1/3 + eps) x) pi / (4k)
    double upper_bound = 0.0;       // -(1 - eps) pi / (4k)
    bool ok = false;
};

struct SandwichReport {
    double x = 0.0;
    double epsilon = 0.0;
    double iota = 0.0;
    int k_min = 0;
    int k_max = 0;
    // Smallest k0 in [k_min, k_max] such that every row in [k0, k_max] is ok.
    std::optional<int> observed_k0;
    // j_{xk,k}/k < iota(x) on every scanned k.
    bool strictly_below = false;
    std::vector<SandwichRow> rows;
};

SandwichReport verify_sandwich(double x, double epsilon, int k_min, int k_max);

// sqrt(1/n^2 + pi^2/m^2) - pi (1/(2n) + exp(m/(3n))/4); positive when the
// gap argument extends to sigma = m/n.
double admissible_sigma_condition(int m, int n);

} // namespace rotwave::asymptotics
