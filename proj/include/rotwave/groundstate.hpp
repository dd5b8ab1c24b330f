#pragma once

// Ground states of the reduced rotating-wave functional
//   Phi(u) = 1/2 sum lambda_a c_a^2 - (1/p) int |u|^p
// on the truncated eigenbasis. With F = E0 + E-, the ground-state level is
//   c = inf_{w in E+, |w| = 1} max_{t >= 0, v in F} Phi(t w + v),
// computed by an inner Newton maximization and an outer descent on the unit
// sphere of E+, finished by Newton's method on Phi'(u) = 0.

#include "rotwave/disk.hpp"
#include "rotwave/radial.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace rotwave::groundstate {

using galerkin::DiskQuadrature;
using galerkin::GalerkinBasis;

struct InnerResult {
    double t = 0.0;
    Eigen::VectorXd v;         // coefficients on the F indices (basis order of F)
    Eigen::VectorXd u;         // full coefficient vector t w + v
    double value = 0.0;        // Phi(u)
    double gradient_norm = 0.0;  // E-dual norm of Phi'(u) restricted to R w + F
    double coercivity_radius = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct KktReport {
    double nehari = 0.0;        // |Phi'(u) u|
    double f_directions = 0.0;  // max over F basis vectors e of |Phi'(u) e| / |e|_E
    double plus_directions = 0.0;  // same over E+
    double u_norm = 0.0;        // |u|_E
    // max(nehari / |u|^2, max(f_directions, plus_directions) / |u|)
    double scaled() const;
};

class NehariProblem {
public:
    // refine multiplies the standard quadrature sizes.
    NehariProblem(const GalerkinBasis& basis, double p, int refine = 1);

    int refine() const { return refine_; }
    const GalerkinBasis& basis() const { return *basis_; }
    const DiskQuadrature& quadrature() const { return quad_; }
    double p() const { return p_; }
    const std::vector<std::size_t>& f_indices() const { return f_; }

    // Phi(c); optionally its coefficient gradient and Hessian.
    double evaluate(const Eigen::VectorXd& c, Eigen::VectorXd* grad = nullptr,
                    Eigen::MatrixXd* hess = nullptr) const;
    double energy(const Eigen::VectorXd& c) const { return evaluate(c); }
    // int |u|^p
    double power_integral(const Eigen::VectorXd& c) const;

    // Radius R (in the E-norm of t w + v) outside which Phi <= 0, for unit w.
    // Assumes E0 is empty.
    double coercivity_radius(const Eigen::VectorXd& w) const;

    // Unique maximizer of Phi on R+ w + F. w must be supported on E+ with |w|_E = 1.
    // The default start is the ray maximizer t = |w|_p^{-p/(p-2)}, v = 0.
    InnerResult inner_maximize(const Eigen::VectorXd& w, const InnerResult* start = nullptr,
                               double tol = 1e-11, int max_iter = 100) const;

    KktReport kkt(const Eigen::VectorXd& c) const;

private:
    const GalerkinBasis* basis_;
    int refine_;
    DiskQuadrature quad_;
    double p_;
    Eigen::VectorXd lambda_;
    std::vector<std::size_t> f_;
    Eigen::VectorXd f_scale_;  // |e_b|_E for b in F
};

struct NehariOptions {
    int starts = 10;            // lowest-lambda E+ modes used as starting directions
    int screening_iterations = 12;
    int polish_starts = 3;
    int max_outer_iterations = 30;
    double outer_tol = 1e-8;    // Riemannian gradient norm relative to the energy
    // Damped Newton steps on Phi'(u) = 0 after the descent; 0 disables.
    int newton_steps = 30;
    double newton_tol = 1e-12;  // on KktReport::scaled()
    // The solution is re-polished on finer quadrature until the energy moves by
    // at most resolution_tol (relative) when the nodes are doubled.
    double resolution_tol = 1e-6;
    int max_refine = 8;
    double inner_tol = 1e-11;
    unsigned seed = 20240611u;
};

struct Coefficient {
    int ell = 0;
    int k = 0;
    galerkin::Parity parity = galerkin::Parity::cos;
    double value = 0.0;
};

struct NehariResult {
    double alpha = 0.0;
    double m = 0.0;
    double p = 0.0;
    double j_cut = 0.0;
    std::size_t basis_size = 0;
    std::size_t plus_size = 0;
    Eigen::VectorXd coefficients;
    std::vector<Coefficient> labelled;
    double energy = 0.0;
    double t = 0.0;
    double kkt_residual = 0.0;   // KktReport::scaled()
    double nehari_residual = 0.0;
    double f_residual = 0.0;
    double plus_residual = 0.0;
    double outer_gradient = 0.0;
    double nonradial_energy_fraction = 0.0;
    double upper_bound = 0.0;    // (1/2 - 1/p) pi (min lambda over the truncated E+)^{p/(p-2)}
    double quadrature_discrepancy = 0.0;  // |Phi on doubled nodes - Phi| / Phi
    int quadrature_refine = 1;            // multiplier of the standard rule used at the end
    bool resolved = false;                // discrepancy <= resolution_tol
    int outer_iterations = 0;
    int newton_iterations = 0;
    bool converged = false;
};

NehariResult ground_state(double alpha, double m, double p, double j_cut,
                          const NehariOptions& options = {});
NehariResult ground_state(const GalerkinBasis& basis, double p, const NehariOptions& options = {});

// Share of |u|_E^2 carried by entries with l >= 1.
double nonradial_energy_fraction(const GalerkinBasis& basis, const Eigen::VectorXd& c);

// (1/2 - 1/p) pi (inf over I+ of lambda)^{p/(p-2)} over l <= ell_max, k <= k_max.
double upper_bound_c(double alpha, double m, double p, int ell_max, int k_max);
// Same over the E+ entries of a truncated basis.
double upper_bound_c(const GalerkinBasis& basis, double p);

struct RadialResult {
    double m = 0.0;
    double p = 0.0;
    std::vector<double> r;
    std::vector<double> profile;  // positive solution of -Delta u + m u = u^{p-1}
    double beta_rad = 0.0;        // (1/2 - 1/p) Q^{p/(p-2)}
    double quotient = 0.0;        // Q = int(|grad u|^2 + m u^2) / |u|_p^2
    double weak_residual = 0.0;
};

RadialResult radial_ground_state(double m, double p, const radial::RadialOptions& options = {});

struct VkResult {
    double alpha = 0.0;
    double m = 0.0;
    int k = 0;
    double p = 0.0;
    std::vector<double> r;
    std::vector<double> minimizer;  // w with u0 = e^{ik theta} w(r), |u0|_p = 1
    std::vector<double> solution;   // K0^{1/(p-2)} w
    double k0 = 0.0;                // Lagrange multiplier = J(u0)
    double weak_residual = 0.0;
    double angular_variance = 0.0;  // max over sampled radii of the variance of |u| in theta
};

// Throws DomainError unless m - alpha^2 k^2 > -j_{0,1}^2.
VkResult complex_vk_minimizer(double alpha, double m, int k, double p,
                              const radial::RadialOptions& options = {});

struct ScanRow {
    double m = 0.0;
    double upper_bound = 0.0;
    double beta_rad = 0.0;
    std::optional<double> c_galerkin;
    std::optional<double> nonradial_fraction;
    std::optional<double> kkt_residual;
    bool below_radial = false;  // (c_galerkin, else upper_bound) < beta_rad
};

struct ScanOptions {
    double j_cut = 60.0;
    int ell_max = 400;  // cutoffs for the lowest-eigenvalue upper bound
    int k_max = 400;
    bool solve_all = false;  // ground states at every m, not only the first crossover
    NehariOptions nehari;
};

struct CrossoverReport {
    double alpha = 0.0;
    double p = 0.0;
    std::vector<ScanRow> rows;
    std::optional<double> crossover_m;  // smallest grid m with c < beta_rad
};

CrossoverReport nonradiality_scan(double alpha, double p, const std::vector<double>& m_grid,
                                  const ScanOptions& options = {});

} // namespace rotwave::groundstate
