#include "rotwave/disk.hpp"

#include "rotwave/error.hpp"
#include "rotwave/quadrature.hpp"
#include "rotwave/simd/kernels.hpp"
#include "rotwave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rotwave::galerkin {

namespace {
constexpr double pi = std::numbers::pi;
}

int GalerkinBasis::ell_max() const {
    int l = 0;
    for (const auto& e : entries) l = std::max(l, e.ell);
    return l;
}

Eigen::VectorXd GalerkinBasis::eigenvalues() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t a = 0; a < entries.size(); ++a) v[static_cast<Eigen::Index>(a)] = entries[a].lambda;
    return v;
}

GalerkinBasis assemble_basis(double alpha, double m, double j_cut, int ell_cap, double kernel_tol) {
    const double j01 = specfun::bessel_j_zero(0.0, 1).value;
    if (!(j_cut > j01)) throw ConfigError("assemble_basis: j_cut must exceed j_{0,1}");
    GalerkinBasis b;
    b.alpha = alpha;
    b.m = m;
    b.j_cut = j_cut;
    b.kernel_tol = kernel_tol;

    for (int l = 0; l <= ell_cap; ++l) {
        std::vector<BasisEntry> row;
        for (int k = 1;; ++k) {
            const double j = specfun::bessel_j_zero(l, k).value;
            if (j > j_cut) break;
            BasisEntry e;
            e.ell = l;
            e.k = k;
            e.j = j;
            e.lambda = j * j - alpha * alpha * l * l + m;
            const double jn = std::abs(specfun::bessel_j(l + 1.0, j));
            e.norm = l == 0 ? 1.0 / (std::sqrt(pi) * jn) : std::sqrt(2.0 / pi) / jn;
            e.sign_class = spectrum::classify(e.lambda, j, kernel_tol);
            row.push_back(e);
        }
        if (row.empty()) break;
        for (Parity par : {Parity::cos, Parity::sin}) {
            if (l == 0 && par == Parity::sin) continue;
            Block blk{l, par, b.entries.size(), 0};
            for (BasisEntry e : row) {
                e.parity = par;
                b.entries.push_back(e);
            }
            blk.end = b.entries.size();
            b.blocks.push_back(blk);
        }
    }
    for (std::size_t a = 0; a < b.entries.size(); ++a) {
        switch (b.entries[a].sign_class) {
        case spectrum::SignClass::positive: b.plus.push_back(a); break;
        case spectrum::SignClass::kernel: b.kernel.push_back(a); break;
        case spectrum::SignClass::negative: b.minus.push_back(a); break;
        }
    }
    if (b.plus.empty()) throw ConfigError("assemble_basis: truncated E+ is empty");
    return b;
}

double e_norm_squared(const GalerkinBasis& basis, const Eigen::VectorXd& c) {
    double s = 0.0;
    for (std::size_t a = 0; a < basis.entries.size(); ++a) {
        const double w = basis.entries[a].sign_class == spectrum::SignClass::kernel
                             ? 1.0
                             : std::abs(basis.entries[a].lambda);
        const double x = c[static_cast<Eigen::Index>(a)];
        s += w * x * x;
    }
    return s;
}

DiskQuadrature::DiskQuadrature(const GalerkinBasis& basis, int n_r, int n_theta)
    : basis_(&basis), n_r_(n_r), n_theta_(n_theta), ell_max_(basis.ell_max()) {
    if (n_r < 1 || n_theta < 2 * ell_max_ + 1)
        throw DomainError("DiskQuadrature: too few nodes for the basis");
    const quad::Rule rule = quad::gauss_legendre(n_r, 0.0, 1.0);
    r_ = rule.nodes;
    r_weight_.resize(n_r);
    for (int i = 0; i < n_r; ++i) r_weight_[i] = rule.weights[i] * rule.nodes[i];

    theta_.resize(n_theta);
    theta_weight_ = 2.0 * pi / n_theta;
    for (int q = 0; q < n_theta; ++q) theta_[q] = -pi + q * theta_weight_;

    weights_.resize(std::size_t(n_r) * n_theta);
    for (int i = 0; i < n_r; ++i)
        for (int q = 0; q < n_theta; ++q) weights_[std::size_t(i) * n_theta + q] = r_weight_[i] * theta_weight_;

    const std::size_t n = basis.size();
    radial_.resize(n * n_r);
    for (std::size_t bi = 0; bi < basis.blocks.size(); ++bi) {
        const Block& b = basis.blocks[bi];
        if (b.parity == Parity::sin) {
            // same radial factors as the cos block of this l, which precedes it
            const Block& twin = basis.blocks[bi - 1];
            std::copy_n(radial_.begin() + twin.begin * n_r, (b.end - b.begin) * n_r,
                        radial_.begin() + b.begin * n_r);
            continue;
        }
        for (std::size_t a = b.begin; a < b.end; ++a) {
            const BasisEntry& e = basis.entries[a];
            for (int i = 0; i < n_r; ++i) radial_[a * n_r + i] = e.norm * specfun::bessel_j(e.ell, e.j * r_[i]);
        }
    }

    const int rows = 2 * ell_max_ + 1;
    trig_.resize(std::size_t(2 * rows) * n_theta);
    for (int nn = 0; nn < rows; ++nn)
        for (int q = 0; q < n_theta; ++q) {
            trig_[std::size_t(nn) * n_theta + q] = std::cos(nn * theta_[q]);
            trig_[std::size_t(rows + nn) * n_theta + q] = std::sin(nn * theta_[q]);
        }
}

DiskQuadrature DiskQuadrature::standard(const GalerkinBasis& basis, int refine) {
    const int n_r = static_cast<int>(std::ceil(1.5 * basis.j_cut)) * refine;
    const int n_theta = (4 * basis.ell_max() + 16) * refine;
    return DiskQuadrature(basis, n_r, n_theta);
}

void DiskQuadrature::synthesize(const Eigen::VectorXd& c, std::vector<double>& u) const {
    const auto& kt = simd::active();
    u.assign(nodes(), 0.0);
    std::vector<double> profile(n_r_);
    for (const Block& b : basis_->blocks) {
        std::fill(profile.begin(), profile.end(), 0.0);
        bool any = false;
        for (std::size_t a = b.begin; a < b.end; ++a) {
            const double ca = c[static_cast<Eigen::Index>(a)];
            if (ca == 0.0) continue;
            kt.axpy(ca, radial_.data() + a * n_r_, profile.data(), n_r_);
            any = true;
        }
        if (!any) continue;
        const double* trig = b.parity == Parity::cos ? cos_row(b.ell) : sin_row(b.ell);
        for (int i = 0; i < n_r_; ++i)
            kt.axpy(profile[i], trig, u.data() + std::size_t(i) * n_theta_, n_theta_);
    }
}

void DiskQuadrature::analyze(const std::vector<double>& g, Eigen::VectorXd& out) const {
    const auto& kt = simd::active();
    out.setZero(static_cast<Eigen::Index>(basis_->size()));
    std::vector<double> moment(n_r_);
    for (const Block& b : basis_->blocks) {
        const double* trig = b.parity == Parity::cos ? cos_row(b.ell) : sin_row(b.ell);
        for (int i = 0; i < n_r_; ++i) moment[i] = kt.dot(g.data() + std::size_t(i) * n_theta_, trig, n_theta_);
        for (std::size_t a = b.begin; a < b.end; ++a)
            out[static_cast<Eigen::Index>(a)] = kt.dot(radial_.data() + a * n_r_, moment.data(), n_r_);
    }
}

Eigen::MatrixXd DiskQuadrature::weighted_gram(const std::vector<double>& q) const {
    const auto& kt = simd::active();
    const int modes = 2 * ell_max_ + 1;
    // Angular moments C_n(r_i), S_n(r_i) of q.
    std::vector<double> cmom(std::size_t(modes) * n_r_), smom(std::size_t(modes) * n_r_);
    for (int i = 0; i < n_r_; ++i) {
        const double* row = q.data() + std::size_t(i) * n_theta_;
        for (int nn = 0; nn < modes; ++nn) {
            cmom[std::size_t(nn) * n_r_ + i] = kt.dot(row, cos_row(nn), n_theta_);
            smom[std::size_t(nn) * n_r_ + i] = kt.dot(row, sin_row(nn), n_theta_);
        }
    }
    auto C = [&](int nn, int i) { return cmom[std::size_t(std::abs(nn)) * n_r_ + i]; };
    auto S = [&](int nn, int i) {
        return nn >= 0 ? smom[std::size_t(nn) * n_r_ + i] : -smom[std::size_t(-nn) * n_r_ + i];
    };

    const std::size_t n = basis_->size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> kernel(n_r_);
    const auto& blocks = basis_->blocks;
    for (std::size_t x = 0; x < blocks.size(); ++x) {
        for (std::size_t y = x; y < blocks.size(); ++y) {
            const Block& b1 = blocks[x];
            const Block& b2 = blocks[y];
            const int l1 = b1.ell, l2 = b2.ell;
            for (int i = 0; i < n_r_; ++i) {
                double v;
                if (b1.parity == Parity::cos && b2.parity == Parity::cos) v = C(l1 - l2, i) + C(l1 + l2, i);
                else if (b1.parity == Parity::sin && b2.parity == Parity::sin) v = C(l1 - l2, i) - C(l1 + l2, i);
                else if (b1.parity == Parity::cos) v = S(l1 + l2, i) - S(l1 - l2, i);
                else v = S(l1 + l2, i) + S(l1 - l2, i);
                kernel[i] = 0.5 * v;
            }
            for (std::size_t a = b1.begin; a < b1.end; ++a) {
                for (std::size_t b = b2.begin; b < b2.end; ++b) {
                    const double val = kt.dot3(radial_.data() + a * n_r_, radial_.data() + b * n_r_,
                                               kernel.data(), n_r_);
                    out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = val;
                    out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = val;
                }
            }
        }
    }
    return out;
}

} // namespace rotwave::galerkin
