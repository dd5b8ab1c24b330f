#include "oracles.hpp"

#include "rotwave/error.hpp"
#include "rotwave/specfun.hpp"
#include "rotwave/groundstate.hpp"
#include "rotwave/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace rotwave;
using namespace rotwave::groundstate;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd random_vector(Eigen::Index n, oracle::Rng& rng) {
    Eigen::VectorXd c(n);
    for (Eigen::Index i = 0; i < n; ++i) c[i] = rng.normal();
    return c;
}

// Unit E-norm direction supported on E+.
Eigen::VectorXd random_plus_direction(const GalerkinBasis& b, oracle::Rng& rng) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(Eigen::Index(b.size()));
    for (auto a : b.plus) w[Eigen::Index(a)] = rng.normal() / std::sqrt(b.entries[a].lambda);
    return w / std::sqrt(galerkin::e_norm_squared(b, w));
}

const GalerkinBasis& small_basis() {
    static const GalerkinBasis b = galerkin::assemble_basis(spectrum::alpha_n(3).alpha, 50.0, 25.0);
    return b;
}

} // namespace

TEST(Functional, GradientAndHessianMatchFiniteDifferences) {
    const GalerkinBasis& b = small_basis();
    const NehariProblem prob(b, 3.0);
    oracle::Rng rng(0xfd);
    const Eigen::VectorXd c = 0.05 * random_vector(Eigen::Index(b.size()), rng);
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    prob.evaluate(c, &grad, &hess);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::VectorXd d = random_vector(c.size(), rng);
        const double h = 1e-5;
        const double fd = (prob.energy(c + h * d) - prob.energy(c - h * d)) / (2 * h);
        EXPECT_NEAR(grad.dot(d), fd, 1e-6 * (1 + std::abs(fd)));
        Eigen::VectorXd gp, gm;
        prob.evaluate(c + h * d, &gp);
        prob.evaluate(c - h * d, &gm);
        const Eigen::VectorXd hd = (gp - gm) / (2 * h);
        EXPECT_LE((hess * d - hd).cwiseAbs().maxCoeff(), 1e-5 * (1 + hd.cwiseAbs().maxCoeff()));
    }
    EXPECT_EQ(prob.energy(Eigen::VectorXd::Zero(c.size())), 0.0);
}

TEST(Functional, PowerIntegralPointwise) {
    // a single l = 0 mode: int |A J0(j r)|^3 over the disk against a Simpson oracle
    const GalerkinBasis b = galerkin::assemble_basis(2.0, 5.0, 3.0, 0);
    ASSERT_EQ(b.size(), 1u);
    const NehariProblem prob(b, 3.0, 4);
    const double j = b.entries[0].j, a = b.entries[0].norm;
    const int n = 2000;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = double(i) / n;
        const double f = std::pow(std::abs(a * oracle::bessel_j(0.0, j * r)), 3.0) * r;
        s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    const double ref = 2 * pi * s / (3.0 * n);
    EXPECT_NEAR(prob.power_integral(Eigen::VectorXd::Ones(1)), ref, 1e-9 * ref);
}

TEST(GroundState, OneModeClosedForm) {
    const GalerkinBasis b = galerkin::assemble_basis(2.0, 5.0, 3.0, 0);
    const NehariProblem prob(b, 3.0, 8);
    const double lam = b.entries[0].lambda, pw = prob.power_integral(Eigen::VectorXd::Ones(1));
    // Phi(s phi) = lam s^2 / 2 - pw s^3 / 3 peaks at s = lam / pw
    const double expected = (0.5 - 1.0 / 3.0) * std::pow(lam, 3.0) / (pw * pw);
    const NehariResult r = ground_state(b, 3.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.energy, expected, 1e-6 * expected);
    EXPECT_NEAR(std::abs(r.coefficients[0]), lam / pw, 1e-6 * lam / pw);
}

TEST(Inner, MultiStartAgreement) {
    const GalerkinBasis& b = small_basis();
    const NehariProblem prob(b, 3.0);
    oracle::Rng rng(0x1a2b);
    for (int dir = 0; dir < 3; ++dir) {
        const Eigen::VectorXd w = random_plus_direction(b, rng);
        const InnerResult ref = prob.inner_maximize(w);
        ASSERT_TRUE(ref.converged);
        EXPECT_GT(ref.t, 0.0);
        EXPECT_LE(std::sqrt(galerkin::e_norm_squared(b, ref.u)), ref.coercivity_radius);
        for (int s = 0; s < 5; ++s) {
            InnerResult start = ref;
            start.t *= 1 + 0.1 * rng.uniform(-1.0, 1.0);
            for (Eigen::Index i = 0; i < start.v.size(); ++i) start.v[i] *= 1 + 0.2 * rng.normal();
            const InnerResult r = prob.inner_maximize(w, &start);
            ASSERT_TRUE(r.converged);
            EXPECT_NEAR(r.value, ref.value, 1e-6 * ref.value);
            EXPECT_LE((r.u - ref.u).norm(), 1e-6 * ref.u.norm());
        }
        // no sampled point of R+ w + F beats the maximizer
        for (int s = 0; s < 20; ++s) {
            Eigen::VectorXd u = ref.u * rng.uniform(0.5, 1.5);
            for (auto a : prob.f_indices()) u[Eigen::Index(a)] += 0.05 * rng.normal() * std::abs(ref.u[Eigen::Index(a)] + 1e-3);
            EXPECT_LE(prob.energy(u), ref.value * (1 + 1e-12));
        }
    }
}

TEST(GroundState, MinimaxOrderingAndKkt) {
    const GalerkinBasis& b = small_basis();
    NehariOptions opt;
    opt.max_refine = 1;
    const NehariResult r = ground_state(b, 3.0, opt);
    EXPECT_GT(r.energy, 0.0);
    EXPECT_LE(r.kkt_residual, 1e-8);
    EXPECT_LE(r.energy, r.upper_bound * (1 + 1e-12));
    const NehariProblem prob(b, 3.0, r.quadrature_refine);
    oracle::Rng rng(0x77);
    for (int s = 0; s < 10; ++s) {
        const InnerResult in = prob.inner_maximize(random_plus_direction(b, rng));
        EXPECT_GE(in.value, r.energy * (1 - 1e-8));
    }
    // the ray through the solution reaches the level
    const double f = nonradial_energy_fraction(b, r.coefficients);
    EXPECT_NEAR(f, r.nonradial_energy_fraction, 1e-14);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
}

TEST(GroundState, RadialRestrictionMatchesRadialSolver) {
    const double m = 10.0;
    const GalerkinBasis b = galerkin::assemble_basis(spectrum::alpha_n(3).alpha, m, 40.0, 0);
    const NehariResult r = ground_state(b, 3.0);
    const RadialResult rad = radial_ground_state(m, 3.0);
    EXPECT_NEAR(r.energy, rad.beta_rad, 1e-3 * rad.beta_rad);
    EXPECT_EQ(r.nonradial_energy_fraction, 0.0);
}

TEST(UpperBound, FormulaAndEnumeration) {
    const double alpha = spectrum::alpha_n(3).alpha;
    double lmin = 1e300;
    for (int l = 0; l <= 40; ++l)
        for (int k = 1; k <= 40; ++k) {
            const double j = specfun::bessel_j_zero(l, k).value;
            const double lam = j * j - alpha * alpha * l * l + 50.0;
            if (lam > spectrum::kDefaultKernelTol * j) lmin = std::min(lmin, lam);
        }
    EXPECT_NEAR(upper_bound_c(alpha, 50.0, 3.0, 40, 40), (0.5 - 1.0 / 3) * pi * std::pow(lmin, 3.0), 1e-12 * std::pow(lmin, 3.0));
    const GalerkinBasis& b = small_basis();
    double bmin = 1e300;
    for (auto a : b.plus) bmin = std::min(bmin, b.entries[a].lambda);
    EXPECT_NEAR(upper_bound_c(b, 2.5), (0.5 - 0.4) * pi * std::pow(bmin, 5.0), 1e-12 * std::pow(bmin, 5.0));
}

TEST(GroundState, ExponentRange) {
    EXPECT_THROW(ground_state(small_basis(), 4.0), DomainError);
    EXPECT_THROW(ground_state(small_basis(), 2.0), DomainError);
    EXPECT_THROW(NehariProblem(small_basis(), 1.5), DomainError);
}
