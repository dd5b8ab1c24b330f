#include "oracles.hpp"

#include "rotwave/asymptotics.hpp"
#include "rotwave/error.hpp"
#include "rotwave/quadrature.hpp"
#include "rotwave/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace rotwave;
using namespace rotwave::asymptotics;

namespace {

constexpr double pi = std::numbers::pi;

// The angle equation solved the other way round: for a given phi,
// x = pi sin(phi) / D and iota = pi / D with D = cos(phi) - (pi/2 - phi) sin(phi).
struct Param {
    double x, iota;
};

Param from_angle(long double phi) {
    const long double p = std::numbers::pi_v<long double>;
    const long double d = std::cos(phi) - (p / 2 - phi) * std::sin(phi);
    return {static_cast<double>(p * std::sin(phi) / d), static_cast<double>(p / d)};
}

} // namespace

TEST(Iota, AtZero) {
    EXPECT_EQ(iota(0.0).iota, pi);
    EXPECT_THROW(iota(-1.0), DomainError);
    EXPECT_THROW(iota(-2.0), DomainError);
}

TEST(Iota, MatchesAngleParametrization) {
    for (double phi = -1.2; phi <= 1.45; phi += 0.01) {
        const Param ref = from_angle(phi);
        const IotaPoint got = iota(ref.x);
        EXPECT_NEAR(got.iota, ref.iota, 1e-12 * ref.iota) << phi;
        EXPECT_NEAR(got.phi, phi, 1e-9) << phi;
    }
}

TEST(Iota, RatioDecreasesTowardsOne) {
    double prev = iota_ratio(0.1);
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double r = iota_ratio(x);
        EXPECT_LT(r, prev);
        prev = r;
    }
    const double r100 = iota_ratio(100.0);
    EXPECT_GT(r100, 1.0);
    EXPECT_LT(r100, 1.11);
}

TEST(FInverse, InvertsTheRatio) {
    for (double y : {1.5, 2.0, 5.0, 20.0}) {
        const double x = f_inverse(y);
        EXPECT_NEAR(iota(x).iota / x, y, 1e-10);
    }
    double prev = f_inverse(1.01);
    for (double y = 1.1; y < 100; y *= 1.3) {
        const double v = f_inverse(y);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_NEAR(f_inverse(10.0), pi / (std::sqrt(99.0) - (pi / 2 - std::asin(0.1))), 1e-14);
    EXPECT_THROW(f_inverse(1.0), DomainError);
    EXPECT_THROW(f_inverse(0.5), DomainError);
}

TEST(GClosed, WatsonForm) {
    EXPECT_DOUBLE_EQ(G_closed(3.0, 0.0), pi / 2);
    for (double y : {3.0, 5.0, 12.0})
        for (double x : {-0.5 * y, 0.1, 0.5 * y, 0.9 * y}) {
            const auto r = quad::integrate_to_infinity(
                [&](double t) {
                    if (!(t > 0) || 2 * (y + x) * t > 700) return 0.0;  // integrand below 1e-300
                    return std::exp(-2 * x * t) * specfun::mod_bessel_k(0, 2 * y * t);
                },
                0.0, 1e-12);
            EXPECT_NEAR(G_closed(y, x), 2 * y * r.value, 1e-8) << y << " " << x;
        }
    EXPECT_THROW(G_closed(2.0, 2.0), DomainError);
    EXPECT_THROW(G_closed(2.0, -3.0), DomainError);
}

TEST(GRatio, SeriesBranchIsContinuous) {
    EXPECT_DOUBLE_EQ(g_ratio(1.0), 1.0);
    const double t = 1.0 + 4.9e-9;  // q just below the series switch
    const double q = std::sqrt((t - 1) * (t + 1));
    EXPECT_NEAR(g_ratio(t), t * std::atan(q) / q, 1e-15);
    EXPECT_NEAR(g_ratio(2.0), 2 * std::acos(0.5) / std::sqrt(3.0), 1e-15);
    EXPECT_THROW(g_ratio(0.5), DomainError);
}

TEST(IotaOde, AgreesWithClosedForm) {
    const IotaTable t = iota_via_ode(10.0);
    ASSERT_EQ(t.x.size(), 201u);
    EXPECT_EQ(t.iota.front(), pi);
    double sup = 0.0;
    for (std::size_t i = 0; i < t.x.size(); ++i) sup = std::max(sup, std::abs(t.iota[i] - iota(t.x[i]).iota));
    EXPECT_LE(sup, 1e-8);
    EXPECT_GT(t.steps, 0u);
}

TEST(IotaK, FirstValues) {
    EXPECT_NEAR(iota_k(1.0, 1), 3.8317059702075125, 1e-12);
    EXPECT_NEAR(iota_k(0.5, 2), specfun::bessel_j_zero(1.0, 2).value / 2, 1e-15);
    EXPECT_THROW(iota_k(0.0, 1), DomainError);
}

TEST(Sandwich, ObservedThreshold) {
    const SandwichReport r = verify_sandwich(1.0, 0.1, 1, 500);
    ASSERT_TRUE(r.observed_k0.has_value());
    EXPECT_LE(*r.observed_k0, 200);
    EXPECT_TRUE(r.strictly_below);
    ASSERT_EQ(r.rows.size(), 500u);
    for (const auto& row : r.rows)
        if (row.k >= *r.observed_k0) EXPECT_TRUE(row.ok);
    EXPECT_THROW(verify_sandwich(1.0, 1.5, 1, 10), DomainError);
    EXPECT_THROW(verify_sandwich(1.0, 0.1, 5, 4), DomainError);
}

TEST(SigmaCondition, KnownCases) {
    EXPECT_GT(admissible_sigma_condition(1, 100), 0.0);
    EXPECT_GT(admissible_sigma_condition(2, 200), 0.0);
    // m = 4, n = 1: direct evaluation of the formula
    const double v = std::sqrt(1.0 + pi * pi / 16) - pi * (0.5 + std::exp(4.0 / 3) / 4);
    EXPECT_NEAR(admissible_sigma_condition(4, 1), v, 1e-14);
    EXPECT_THROW(admissible_sigma_condition(0, 1), DomainError);
}
