#include "rotwave/radial.hpp"

#include "rotwave/error.hpp"
#include "rotwave/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace rotwave::radial {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// 4-point Gauss-Legendre on (0, 1).
constexpr std::array<double, 4> kXi = {0.0694318442029737, 0.3300094782075719,
                                       0.6699905217924281, 0.9305681557970263};
constexpr std::array<double, 4> kOmega = {0.1739274225687269, 0.3260725774312731,
                                          0.3260725774312731, 0.1739274225687269};

struct Tridiagonal {
    std::vector<double> lower, diag, upper;  // lower[i] couples i and i-1

    explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::vector<double> apply(const std::vector<double>& x) const {
        const std::size_t n = diag.size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = diag[i] * x[i];
            if (i > 0) s += lower[i] * x[i - 1];
            if (i + 1 < n) s += upper[i] * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    // Thomas algorithm; the matrices here are symmetric and either positive
    // definite or close to it, so no pivoting.
    std::vector<double> solve(std::vector<double> rhs) const {
        const std::size_t n = diag.size();
        std::vector<double> c(n);
        double denom = diag[0];
        if (denom == 0.0) throw NumericError("radial: singular tridiagonal system");
        c[0] = upper[0] / denom;
        rhs[0] /= denom;
        for (std::size_t i = 1; i < n; ++i) {
            denom = diag[i] - lower[i] * c[i - 1];
            if (denom == 0.0) throw NumericError("radial: singular tridiagonal system");
            c[i] = upper[i] / denom;
            rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
        return rhs;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

class Discretization {
public:
    Discretization(double shift, int k, double p, int elements)
        : shift_(shift), k_(k), p_(p), first_(k == 0 ? 0 : 1) {
        // sinh grading resolves the m^{-1/2} core of strongly massive profiles
        const double c = 1.0 + 0.5 * std::log1p(std::max(shift, 0.0));
        r_.resize(elements + 1);
        for (int i = 0; i <= elements; ++i) r_[i] = std::sinh(c * i / elements) / std::sinh(c);
        r_.back() = 1.0;
        unknowns_ = static_cast<std::size_t>(elements) - first_;
        stiffness_ = assemble_linear();
    }

    const std::vector<double>& mesh() const { return r_; }
    std::size_t unknowns() const { return unknowns_; }
    const Tridiagonal& stiffness() const { return stiffness_; }

    // Nodal vector (unknowns only) -> nonlinear load, Jacobian weights, and int |z|^p.
    void nonlinear(const std::vector<double>& z, std::vector<double>& load, Tridiagonal* jac,
                   double* power) const {
        load.assign(unknowns_, 0.0);
        double pw = 0.0;
        if (jac) *jac = stiffness_;
        for (std::size_t e = 0; e + 1 < r_.size(); ++e) {
            const double h = r_[e + 1] - r_[e];
            const double zl = node(z, e), zr = node(z, e + 1);
            double ll = 0.0, lr = 0.0, jll = 0.0, jlr = 0.0, jrr = 0.0;
            for (std::size_t g = 0; g < kXi.size(); ++g) {
                const double xi = kXi[g];
                const double w = two_pi * kOmega[g] * h * (r_[e] + h * xi);
                const double u = zl * (1.0 - xi) + zr * xi;
                const double au = std::abs(u);
                const double s = au > 0.0 ? std::pow(au, p_ - 2.0) : 0.0;
                pw += w * s * au * au;
                ll += w * s * u * (1.0 - xi);
                lr += w * s * u * xi;
                const double cv = (p_ - 1.0) * w * s;
                jll += cv * (1.0 - xi) * (1.0 - xi);
                jlr += cv * (1.0 - xi) * xi;
                jrr += cv * xi * xi;
            }
            add(load, e, ll);
            add(load, e + 1, lr);
            if (jac) {
                add_matrix(*jac, e, e, -jll);
                add_matrix(*jac, e, e + 1, -jlr);
                add_matrix(*jac, e + 1, e + 1, -jrr);
            }
        }
        if (power) *power = pw;
    }

    std::vector<double> full(const std::vector<double>& z) const {
        std::vector<double> out(r_.size(), 0.0);
        for (std::size_t i = 0; i < unknowns_; ++i) out[i + first_] = z[i];
        return out;
    }

    std::vector<double> initial_guess() const {
        std::vector<double> z(unknowns_);
        for (std::size_t i = 0; i < unknowns_; ++i) {
            const double r = r_[i + first_];
            z[i] = (1.0 - r * r) * std::pow(r, k_);
        }
        return z;
    }

private:
    double shift_;
    int k_;
    double p_;
    std::size_t first_;
    std::size_t unknowns_ = 0;
    std::vector<double> r_;
    Tridiagonal stiffness_{0};

    // global node -> unknown index, or npos for Dirichlet nodes
    bool index(std::size_t node, std::size_t& i) const {
        if (node < first_ || node + 1 >= r_.size()) return false;
        i = node - first_;
        return true;
    }
    double node(const std::vector<double>& z, std::size_t n) const {
        std::size_t i;
        return index(n, i) ? z[i] : 0.0;
    }
    void add(std::vector<double>& v, std::size_t n, double x) const {
        std::size_t i;
        if (index(n, i)) v[i] += x;
    }
    void add_matrix(Tridiagonal& t, std::size_t a, std::size_t b, double x) const {
        std::size_t i, j;
        if (!index(a, i) || !index(b, j)) return;
        if (i == j) t.diag[i] += x;
        else {
            t.upper[i] += x;  // b = a + 1
            t.lower[j] += x;
        }
    }

    Tridiagonal assemble_linear() const {
        Tridiagonal t(unknowns_);
        const double kk = double(k_) * k_;
        for (std::size_t e = 0; e + 1 < r_.size(); ++e) {
            const double h = r_[e + 1] - r_[e];
            double all = 0.0, alr = 0.0, arr = 0.0;
            for (std::size_t g = 0; g < kXi.size(); ++g) {
                const double xi = kXi[g];
                const double r = r_[e] + h * xi;
                const double w = two_pi * kOmega[g] * h * r;
                const double pot = (kk > 0.0 ? kk / (r * r) : 0.0) + shift_;
                all += w * (1.0 / (h * h) + pot * (1.0 - xi) * (1.0 - xi));
                alr += w * (-1.0 / (h * h) + pot * (1.0 - xi) * xi);
                arr += w * (1.0 / (h * h) + pot * xi * xi);
            }
            add_matrix(t, e, e, all);
            add_matrix(t, e, e + 1, alr);
            add_matrix(t, e + 1, e + 1, arr);
        }
        return t;
    }
};

} // namespace

double RadialSolution::quotient() const { return quadratic / std::pow(power, 2.0 / p); }

RadialSolution solve_profile(double shift, int angular_index, double p, const RadialOptions& options) {
    if (!(p > 2.0) || !std::isfinite(p)) throw DomainError("solve_profile: requires p > 2");
    if (angular_index < 0) throw DomainError("solve_profile: angular index must be >= 0");
    if (options.elements < 8) throw DomainError("solve_profile: too few elements");
    const double jk1 = specfun::bessel_j_zero(angular_index, 1).value;
    if (!(shift > -jk1 * jk1))
        throw DomainError("solve_profile: quadratic form not positive (shift <= -j_{k,1}^2)");

    const Discretization disc(shift, angular_index, p, options.elements);
    const Tridiagonal& a = disc.stiffness();

    RadialSolution out;
    out.angular_index = angular_index;
    out.shift = shift;
    out.p = p;
    out.r = disc.mesh();

    // Petviashvili iteration: z <- M^gamma A^{-1} N(z), M = <z, Az>/<z, N(z)>.
    const double gamma = (p - 1.0) / (p - 2.0);
    std::vector<double> z = disc.initial_guess();
    std::vector<double> load;
    int it = 0;
    for (; it < options.max_fixed_point; ++it) {
        disc.nonlinear(z, load, nullptr, nullptr);
        const double mfac = dot(z, a.apply(z)) / dot(z, load);
        std::vector<double> next = a.solve(load);
        const double scale = std::pow(mfac, gamma);
        for (double& x : next) x *= scale;
        z.swap(next);
        if (std::abs(mfac - 1.0) < 1e-6) break;
    }

    // Newton polish on A z - N(z) = 0.
    Tridiagonal jac(disc.unknowns());
    double res_norm = 0.0;
    for (int nt = 0; nt < options.max_newton; ++nt, ++it) {
        disc.nonlinear(z, load, &jac, nullptr);
        std::vector<double> res = a.apply(z);
        // componentwise backward error: |A z - N| / (|A| |z| + |N|)
        res_norm = 0.0;
        for (std::size_t i = 0; i < res.size(); ++i) {
            double mag = std::abs(a.diag[i] * z[i]) + std::abs(load[i]);
            if (i > 0) mag += std::abs(a.lower[i] * z[i - 1]);
            if (i + 1 < res.size()) mag += std::abs(a.upper[i] * z[i + 1]);
            res[i] -= load[i];
            if (mag > 0.0) res_norm = std::max(res_norm, std::abs(res[i]) / mag);
        }
        if (res_norm <= options.tol) {
            out.converged = true;
            break;
        }
        const std::vector<double> dz = jac.solve(res);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= dz[i];
    }
    out.iterations = it;

    disc.nonlinear(z, load, nullptr, &out.power);
    const std::vector<double> az = a.apply(z);
    out.quadratic = dot(z, az);
    const double znorm = std::sqrt(out.quadratic);
    double wr = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        wr = std::max(wr, std::abs(az[i] - load[i]) / std::sqrt(a.diag[i]));
    out.weak_residual = znorm > 0.0 ? wr / znorm : wr;
    out.z = disc.full(z);
    if (!out.converged)
        throw NumericError("solve_profile: Newton did not reach tolerance (residual " +
                           std::to_string(res_norm) + ")");
    return out;
}

double interpolate(const RadialSolution& s, double r) {
    if (r <= 0.0) return s.z.front();
    if (r >= 1.0) return s.z.back();
    const auto it = std::upper_bound(s.r.begin(), s.r.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - s.r.begin()) - 1;
    const double t = (r - s.r[i]) / (s.r[i + 1] - s.r[i]);
    return s.z[i] * (1.0 - t) + s.z[i + 1] * t;
}

} // namespace rotwave::radial
