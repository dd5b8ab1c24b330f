#include "rotwave/error.hpp"
#include "rotwave/specfun.hpp"
#include "rotwave/groundstate.hpp"
#include "rotwave/radial.hpp"
#include "rotwave/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace rotwave;

namespace {

constexpr double pi = std::numbers::pi;

// Shooting oracle for -z'' - z'/r + k^2 z/r^2 + s z = z^{p-1}: z ~ a r^k near 0,
// RK4 in long double, returns z(1).
long double shoot(long double a, double s, int k, double p) {
    const int steps = 20000;
    const long double r0 = 1e-4L;
    // leading term plus the first correction of the series
    long double z = a * std::pow(r0, k);
    long double dz = k == 0 ? 0.0L : k * a * std::pow(r0, k - 1);
    if (k == 0) {
        const long double c2 = (s * a - std::pow(a, p - 1)) / 4;
        z += c2 * r0 * r0;
        dz = 2 * c2 * r0;
    }
    const long double h = (1.0L - r0) / steps;
    auto rhs = [&](long double r, long double y, long double yp, long double& d1, long double& d2) {
        d1 = yp;
        d2 = -yp / r + (k * k / (r * r) + s) * y - std::pow(std::abs(y), p - 2) * y;
    };
    long double r = r0;
    for (int i = 0; i < steps; ++i) {
        long double a1, b1, a2, b2, a3, b3, a4, b4;
        rhs(r, z, dz, a1, b1);
        rhs(r + h / 2, z + h / 2 * a1, dz + h / 2 * b1, a2, b2);
        rhs(r + h / 2, z + h / 2 * a2, dz + h / 2 * b2, a3, b3);
        rhs(r + h, z + h * a3, dz + h * b3, a4, b4);
        z += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
        dz += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
        r += h;
        if (z < 0) return z;
    }
    return z;
}

// Amplitude for which the positive solution hits zero exactly at r = 1.
double shooting_amplitude(double s, int k, double p, double lo, double hi) {
    for (int i = 0; i < 70; ++i) {
        const double mid = 0.5 * (lo + hi);
        (shoot(mid, s, k, p) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST(RadialProfile, MatchesShootingAtCenter) {
    for (double p : {2.5, 3.0, 4.0}) {
        const radial::RadialSolution s = radial::solve_profile(10.0, 0, p);
        ASSERT_TRUE(s.converged);
        const double a = shooting_amplitude(10.0, 0, p, 1e-3, 1e3);
        EXPECT_NEAR(s.z.front(), a, 1e-5 * a) << p;
        for (std::size_t i = 0; i + 1 < s.z.size(); ++i) ASSERT_GT(s.z[i], 0.0);
        EXPECT_EQ(s.z.back(), 0.0);
        EXPECT_LE(s.weak_residual, 1e-8);
    }
}

TEST(RadialProfile, AngularIndexMatchesShooting) {
    const radial::RadialSolution s = radial::solve_profile(-5.0, 1, 3.0);
    ASSERT_TRUE(s.converged);
    EXPECT_EQ(s.z.front(), 0.0);
    const double a = shooting_amplitude(-5.0, 1, 3.0, 1e-2, 1e4);
    // z ~ a r near the origin
    const double slope = radial::interpolate(s, 1e-3) / 1e-3;
    EXPECT_NEAR(slope, a, 2e-3 * a);
}

TEST(RadialProfile, NehariIdentity) {
    for (double m : {0.0, 10.0, 300.0}) {
        const radial::RadialSolution s = radial::solve_profile(m, 0, 3.0);
        // exact for the continuous problem; the discrete forms differ at discretization level
        EXPECT_NEAR(s.quadratic, s.power, 1e-6 * s.power);
        const groundstate::RadialResult r = groundstate::radial_ground_state(m, 3.0);
        EXPECT_NEAR(r.beta_rad, (0.5 - 1.0 / 3.0) * s.power, 1e-6 * r.beta_rad);
    }
}

TEST(RadialProfile, SmallAmplitudeNearEigenvalue) {
    // s slightly above -j01^2: the solution is small and the quotient approaches s + j01^2
    const double j01 = specfun::bessel_j_zero(0.0, 1).value;
    const double s = -j01 * j01 + 0.05;
    const radial::RadialSolution sol = radial::solve_profile(s, 0, 3.0);
    EXPECT_LT(sol.z.front(), 0.2);
    EXPECT_GT(sol.quotient(), 0.0);
}

TEST(RadialProfile, Errors) {
    const double j01 = specfun::bessel_j_zero(0.0, 1).value;
    const double j11 = specfun::bessel_j_zero(1.0, 1).value;
    EXPECT_THROW(radial::solve_profile(-j01 * j01 - 0.1, 0, 3.0), DomainError);
    EXPECT_NO_THROW(radial::solve_profile(-j01 * j01 - 0.1, 1, 3.0));
    EXPECT_THROW(radial::solve_profile(-j11 * j11 - 0.1, 1, 3.0), DomainError);
    EXPECT_THROW(radial::solve_profile(1.0, 0, 2.0), DomainError);
    EXPECT_THROW(radial::solve_profile(1.0, -1, 3.0), DomainError);
    EXPECT_THROW(groundstate::radial_ground_state(-1.0, 3.0), DomainError);
}

TEST(RadialLevel, GrowthSlope) {
    for (double p : {2.5, 3.0, 3.5}) {
        const double b2 = groundstate::radial_ground_state(1e2, p).beta_rad;
        const double b4 = groundstate::radial_ground_state(1e4, p).beta_rad;
        const double slope = std::log10(b4 / b2) / 2;
        EXPECT_NEAR(slope, 2 / (p - 2), 0.1 * 2 / (p - 2)) << p;
    }
}

TEST(Vk, MinimizerProperties) {
    const double alpha = spectrum::alpha_n(2).alpha;
    const groundstate::VkResult v = groundstate::complex_vk_minimizer(alpha, 70.0, 1, 3.0);
    EXPECT_GT(v.k0, 0.0);
    EXPECT_LE(v.weak_residual, 1e-6);
    EXPECT_LE(v.angular_variance, 1e-10);
    // |w|_p = 1 in the measure r dr dtheta
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.r.size(); ++i) {
        const double h = v.r[i + 1] - v.r[i];
        const auto f = [&](std::size_t j) { return std::pow(std::abs(v.minimizer[j]), 3.0) * v.r[j]; };
        acc += 0.5 * h * (f(i) + f(i + 1));
    }
    EXPECT_NEAR(2 * pi * acc, 1.0, 1e-4);
    for (std::size_t i = 0; i < v.solution.size(); ++i)
        EXPECT_NEAR(v.solution[i], std::pow(v.k0, 1.0 / (3.0 - 2.0)) * v.minimizer[i], 1e-10 * (1 + std::abs(v.solution[i])));
    EXPECT_THROW(groundstate::complex_vk_minimizer(alpha, 0.0, 1, 3.0), DomainError);
    EXPECT_THROW(groundstate::complex_vk_minimizer(alpha, 70.0, 0, 3.0), DomainError);
}
