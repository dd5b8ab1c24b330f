#include "rotwave/error.hpp"
#include "rotwave/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace rotwave;

TEST(GaussLegendre, ExactForPolynomials) {
    for (int n : {1, 2, 5, 16, 90}) {
        const auto r = quad::gauss_legendre(n, 0.0, 1.0);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
        for (int d = 0; d < 2 * n; d += std::max(1, n / 4)) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
            EXPECT_NEAR(s, 1.0 / (d + 1), 1e-14) << n << " " << d;
        }
    }
}

TEST(Integrate, SmoothAndSingular) {
    EXPECT_NEAR(quad::integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi).value, 2.0, 1e-13);
    EXPECT_NEAR(quad::integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1).value, 2.0, 1e-12);
    EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0).value, 1.0, 1e-13);
}
