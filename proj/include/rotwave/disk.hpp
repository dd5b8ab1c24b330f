#pragma once

// Truncated Dirichlet eigenbasis of the disk, A cos(l theta) J_l(j r) and
// A sin(l theta) J_l(j r), and a polar tensor quadrature to evaluate the
// nonlinear terms of the energy on it.

#include "rotwave/spectrum.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <vector>

namespace rotwave::galerkin {

enum class Parity { cos, sin };

struct BasisEntry {
    int ell = 0;
    int k = 0;
    Parity parity = Parity::cos;
    double j = 0.0;
    double lambda = 0.0;  // j^2 - alpha^2 l^2 + m
    double norm = 0.0;    // A, so that the L2 norm on the disk is 1
    spectrum::SignClass sign_class = spectrum::SignClass::positive;
};

// Entries are grouped in blocks of equal (l, parity), k ascending inside a block.
struct Block {
    int ell = 0;
    Parity parity = Parity::cos;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct GalerkinBasis {
    double alpha = 0.0;
    double m = 0.0;
    double j_cut = 0.0;
    double kernel_tol = spectrum::kDefaultKernelTol;
    std::vector<BasisEntry> entries;
    std::vector<Block> blocks;
    std::vector<std::size_t> plus, kernel, minus;  // E+, E0, E-

    std::size_t size() const { return entries.size(); }
    int ell_max() const;
    Eigen::VectorXd eigenvalues() const;
};

// Every (l, k, parity) with j_{l,k} <= j_cut and l <= ell_cap.
// Throws ConfigError when E+ is empty.
GalerkinBasis assemble_basis(double alpha, double m, double j_cut,
                             int ell_cap = std::numeric_limits<int>::max(),
                             double kernel_tol = spectrum::kDefaultKernelTol);

// Squared norm ||u||^2 = sum |lambda| c^2 over non-kernel entries + c^2 over kernel entries.
double e_norm_squared(const GalerkinBasis& basis, const Eigen::VectorXd& c);

// Tensor rule: Gauss-Legendre in r on (0,1) with weight r, trapezoid in theta
// on [-pi, pi). Node (i, q) is stored at i * n_theta + q.
class DiskQuadrature {
public:
    DiskQuadrature(const GalerkinBasis& basis, int n_r, int n_theta);

    // n_r = ceil(1.5 j_cut), n_theta = 4 l_max + 16, times refine.
    static DiskQuadrature standard(const GalerkinBasis& basis, int refine = 1);

    int n_r() const { return n_r_; }
    int n_theta() const { return n_theta_; }
    std::size_t nodes() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& angles() const { return theta_; }

    // Values at the nodes of sum_a c_a phi_a.
    void synthesize(const Eigen::VectorXd& c, std::vector<double>& u) const;

    // out_a = sum_nodes g * phi_a (g already carries quadrature weights).
    void analyze(const std::vector<double>& g, Eigen::VectorXd& out) const;

    // Dense sum_nodes q * phi_a * phi_b (q already carries quadrature weights).
    Eigen::MatrixXd weighted_gram(const std::vector<double>& q) const;

    // phi_a at node radius index i (angle factor excluded).
    double radial_value(std::size_t a, int i) const { return radial_[a * n_r_ + i]; }

private:
    const GalerkinBasis* basis_;
    int n_r_;
    int n_theta_;
    int ell_max_;
    std::vector<double> r_, r_weight_, theta_;
    std::vector<double> weights_;
    std::vector<double> radial_;  // A_a J_l(j_a r_i), entry-major
    std::vector<double> trig_;    // [cos(n theta_q) for n <= 2 l_max] then [sin(...)], each n_theta long
    double theta_weight_;

    const double* cos_row(int n) const { return trig_.data() + std::size_t(n) * n_theta_; }
    const double* sin_row(int n) const {
        return trig_.data() + std::size_t(2 * ell_max_ + 1 + n) * n_theta_;
    }
};

} // namespace rotwave::galerkin
