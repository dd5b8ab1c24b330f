#include "rotwave/groundstate.hpp"

#include "rotwave/error.hpp"
#include "rotwave/parallel.hpp"
#include "rotwave/simd/kernels.hpp"
#include "rotwave/specfun.hpp"
#include "rotwave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace rotwave::groundstate {

namespace {

constexpr double pi = std::numbers::pi;

using Index = Eigen::Index;

Index ix(std::size_t a) { return static_cast<Index>(a); }

void check_p(double p) {
    if (!(p > 2.0 && p < 4.0)) throw DomainError("ground state: requires p in (2, 4)");
}

} // namespace

double KktReport::scaled() const {
    if (u_norm == 0.0) return std::max({nehari, f_directions, plus_directions});
    return std::max(nehari / (u_norm * u_norm), std::max(f_directions, plus_directions) / u_norm);
}

NehariProblem::NehariProblem(const GalerkinBasis& basis, double p, int refine)
    : basis_(&basis), refine_(refine), quad_(DiskQuadrature::standard(basis, refine)), p_(p), lambda_(basis.eigenvalues()) {
    if (!(p > 2.0)) throw DomainError("NehariProblem: requires p > 2");
    f_ = basis.kernel;
    f_.insert(f_.end(), basis.minus.begin(), basis.minus.end());
    std::sort(f_.begin(), f_.end());
    f_scale_.resize(ix(f_.size()));
    for (std::size_t i = 0; i < f_.size(); ++i) {
        const auto& e = basis.entries[f_[i]];
        f_scale_[ix(i)] = e.sign_class == spectrum::SignClass::kernel ? 1.0 : std::sqrt(std::abs(e.lambda));
    }
}

double NehariProblem::evaluate(const Eigen::VectorXd& c, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) const {
    std::vector<double> u;
    quad_.synthesize(c, u);
    const std::size_t n = u.size();
    std::vector<double> g(n), curv(hess ? n : 0);
    const double s = simd::active().power_terms(u.data(), quad_.weights().data(), n, p_, g.data(),
                                                hess ? curv.data() : nullptr);
    const double value = 0.5 * c.dot(lambda_.cwiseProduct(c)) - s / p_;
    if (grad) {
        Eigen::VectorXd nl;
        quad_.analyze(g, nl);
        *grad = lambda_.cwiseProduct(c) - nl;
    }
    if (hess) {
        *hess = quad_.weighted_gram(curv);
        *hess *= -(p_ - 1.0);
        hess->diagonal() += lambda_;
    }
    return value;
}

double NehariProblem::power_integral(const Eigen::VectorXd& c) const {
    std::vector<double> u;
    quad_.synthesize(c, u);
    std::vector<double> g(u.size());
    return simd::active().power_terms(u.data(), quad_.weights().data(), u.size(), p_, g.data(), nullptr);
}

double NehariProblem::coercivity_radius(const Eigen::VectorXd& w) const {
    // Phi(t w + v) <= t^2/2 - |v|^2/2 - (1/p) pi^{1-p/2} |w|_2^p t^p, so Phi <= 0 once
    // t >= t_R, and for t < t_R once |v| >= t_R.
    const double l2 = w.norm();
    const double t_r = std::pow(p_ * std::pow(pi, 0.5 * p_ - 1.0) / (2.0 * std::pow(l2, p_)), 1.0 / (p_ - 2.0));
    return std::sqrt(2.0) * t_r;
}

InnerResult NehariProblem::inner_maximize(const Eigen::VectorXd& w, const InnerResult* start, double tol,
                                          int max_iter) const {
    const Index nf = ix(f_.size());
    const Index dim = nf + 1;

    // Scaled coordinates x = (t, y), v_b = y_b / |e_b|_E; the E-norm of t w + v is |x|.
    auto assemble = [&](const Eigen::VectorXd& xs) {
        Eigen::VectorXd u = xs[0] * w;
        for (Index i = 0; i < nf; ++i) u[ix(f_[i])] += xs[i + 1] / f_scale_[i];
        return u;
    };
    auto reduce_gradient = [&](const Eigen::VectorXd& grad) {
        Eigen::VectorXd g(dim);
        g[0] = grad.dot(w);
        for (Index i = 0; i < nf; ++i) g[i + 1] = grad[ix(f_[i])] / f_scale_[i];
        return g;
    };

    InnerResult res;
    res.coercivity_radius = coercivity_radius(w);
    // The maximizer lies inside the coercivity ball; only enforced when the
    // radius estimate applies (E0 empty).
    const bool confine = basis_->kernel.empty();

    // Start at the ray maximizer, or at the warm start when that is admissible
    // and higher (a warm start from another direction can be far off).
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    x[0] = std::pow(power_integral(w), -1.0 / (p_ - 2.0));
    Eigen::VectorXd u = assemble(x);
    double f = evaluate(u);
    if (start && start->t > 0.0 && start->v.size() == nf) {
        Eigen::VectorXd xs(dim);
        xs[0] = start->t;
        for (Index i = 0; i < nf; ++i) xs[i + 1] = start->v[i] * f_scale_[i];
        if (!confine || xs.norm() <= res.coercivity_radius) {
            Eigen::VectorXd us = assemble(xs);
            const double fs = evaluate(us);
            if (fs > f) {
                x = xs;
                u = us;
                f = fs;
            }
        }
    }
    Eigen::VectorXd grad, g;
    Eigen::MatrixXd hess;
    f = evaluate(u, &grad, &hess);
    g = reduce_gradient(grad);

    Eigen::MatrixXd a(dim, dim);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it;
        const double scale = std::max(1.0, x.norm());
        if (g.norm() <= tol * scale) {
            res.converged = true;
            break;
        }
        // -H in scaled coordinates
        const Eigen::VectorXd hw = hess * w;
        a(0, 0) = -w.dot(hw);
        for (Index i = 0; i < nf; ++i) {
            const double v = -hw[ix(f_[i])] / f_scale_[i];
            a(0, i + 1) = v;
            a(i + 1, 0) = v;
            for (Index j = 0; j <= i; ++j) {
                const double h = -hess(ix(f_[i]), ix(f_[j])) / (f_scale_[i] * f_scale_[j]);
                a(i + 1, j + 1) = h;
                a(j + 1, i + 1) = h;
            }
        }
        // Levenberg-Marquardt shift until -H + mu I is positive definite.
        Eigen::VectorXd step;
        double mu = 0.0;
        const double diag_scale = std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
        for (int tries = 0; tries < 60; ++tries) {
            Eigen::MatrixXd shifted = a;
            shifted.diagonal().array() += mu;
            Eigen::LLT<Eigen::MatrixXd> llt(shifted);
            if (llt.info() == Eigen::Success) {
                step = llt.solve(g);
                if (step.allFinite()) break;
            }
            step.resize(0);
            mu = mu == 0.0 ? 1e-8 * diag_scale : 4.0 * mu;
        }
        if (step.size() == 0) throw NumericError("inner_maximize: could not regularize the Hessian");

        // Backtracking ascent keeping t > 0.
        const double slope = g.dot(step);
        double tau = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls, tau *= 0.5) {
            Eigen::VectorXd xt = x + tau * step;
            if (!(xt[0] > 0.0)) continue;
            if (confine && xt.norm() > res.coercivity_radius) continue;
            Eigen::VectorXd ut = assemble(xt);
            const double ft = evaluate(ut);
            if (ft >= f + 1e-4 * tau * slope) {
                x = xt;
                u = ut;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no further ascent representable in double
        if (tau * step.norm() <= 1e-14 * std::max(1.0, x.norm())) {
            // Newton step at rounding level: the gradient sits on its floor
            f = evaluate(u, &grad, &hess);
            g = reduce_gradient(grad);
            res.converged = true;
            break;
        }
        f = evaluate(u, &grad, &hess);
        g = reduce_gradient(grad);
    }
    if (!res.converged && g.norm() <= tol * std::max(1.0, x.norm())) res.converged = true;

    res.t = x[0];
    res.v.resize(nf);
    for (Index i = 0; i < nf; ++i) res.v[i] = x[i + 1] / f_scale_[i];
    res.u = u;
    res.value = f;
    res.gradient_norm = g.norm();
    return res;
}

KktReport NehariProblem::kkt(const Eigen::VectorXd& c) const {
    Eigen::VectorXd grad;
    evaluate(c, &grad);
    KktReport r;
    r.nehari = std::abs(grad.dot(c));
    for (std::size_t i = 0; i < f_.size(); ++i)
        r.f_directions = std::max(r.f_directions, std::abs(grad[ix(f_[i])]) / f_scale_[ix(i)]);
    for (std::size_t a : basis_->plus)
        r.plus_directions = std::max(r.plus_directions, std::abs(grad[ix(a)]) / std::sqrt(lambda_[ix(a)]));
    r.u_norm = std::sqrt(galerkin::e_norm_squared(*basis_, c));
    return r;
}

double nonradial_energy_fraction(const GalerkinBasis& basis, const Eigen::VectorXd& c) {
    double total = 0.0, nonradial = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto& e = basis.entries[a];
        const double w = e.sign_class == spectrum::SignClass::kernel ? 1.0 : std::abs(e.lambda);
        const double s = w * c[ix(a)] * c[ix(a)];
        total += s;
        if (e.ell >= 1) nonradial += s;
    }
    return total > 0.0 ? nonradial / total : 0.0;
}

namespace {

// Outer descent on the unit sphere of E+ in coordinates y_a = sqrt(lambda_a) w_a.
class SphereDescent {
public:
    SphereDescent(const NehariProblem& problem, double inner_tol)
        : problem_(problem), inner_tol_(inner_tol) {
        const auto& basis = problem.basis();
        plus_ = basis.plus;
        root_.resize(ix(plus_.size()));
        for (std::size_t i = 0; i < plus_.size(); ++i) root_[ix(i)] = std::sqrt(basis.entries[plus_[i]].lambda);
    }

    struct State {
        Eigen::VectorXd y;
        InnerResult inner;
        double psi = 0.0;
        Eigen::VectorXd grad;  // Riemannian gradient
        double tau = 0.0;      // next trial step
        int iterations = 0;
        bool converged = false;
    };

    State start(const Eigen::VectorXd& y0) const {
        State s;
        s.y = y0.normalized();
        s.inner = problem_.inner_maximize(direction(s.y), nullptr, inner_tol_);
        s.psi = s.inner.value;
        s.grad = gradient(s.y, s.inner);
        s.tau = 0.05 / std::max(s.grad.norm(), 1e-300);
        return s;
    }

    void run(State& s, int iterations, double tol) const {
        for (int it = 0; it < iterations; ++it) {
            const double gn = s.grad.norm();
            if (gn <= tol * std::max(std::abs(s.psi), 1e-300)) {
                s.converged = true;
                return;
            }
            bool moved = false;
            double tau = s.tau;
            for (int ls = 0; ls < 40; ++ls, tau *= 0.5) {
                Eigen::VectorXd yt = (s.y - tau * s.grad).normalized();
                InnerResult warm = s.inner;
                InnerResult it_inner = problem_.inner_maximize(direction(yt), &warm, inner_tol_);
                if (it_inner.converged && it_inner.value <= s.psi - 1e-4 * tau * gn * gn) {
                    const Eigen::VectorXd gt = gradient(yt, it_inner);
                    const Eigen::VectorXd step = yt - s.y;
                    const Eigen::VectorXd dg = gt - s.grad;
                    const double sy = step.dot(dg);
                    const double next = sy > 0.0 ? step.squaredNorm() / sy : 4.0 * tau;
                    s.tau = std::clamp(next, 1e-6 * tau, 1e3 * tau);
                    s.y = yt;
                    s.inner = std::move(it_inner);
                    s.psi = s.inner.value;
                    s.grad = gt;
                    moved = true;
                    break;
                }
            }
            ++s.iterations;
            if (!moved) {
                // no descent representable at this precision
                s.converged = s.grad.norm() <= 1e3 * tol * std::max(std::abs(s.psi), 1e-300);
                return;
            }
        }
    }

    Eigen::VectorXd direction(const Eigen::VectorXd& y) const {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(ix(problem_.basis().size()));
        for (std::size_t i = 0; i < plus_.size(); ++i) w[ix(plus_[i])] = y[ix(i)] / root_[ix(i)];
        return w;
    }

    std::size_t dimension() const { return plus_.size(); }
    const std::vector<std::size_t>& plus() const { return plus_; }

private:
    const NehariProblem& problem_;
    double inner_tol_;
    std::vector<std::size_t> plus_;
    Eigen::VectorXd root_;

    // d psi / dy_a = t * Phi'(u)[e_a] / sqrt(lambda_a), projected on the tangent space.
    Eigen::VectorXd gradient(const Eigen::VectorXd& y, const InnerResult& inner) const {
        Eigen::VectorXd full;
        problem_.evaluate(inner.u, &full);
        Eigen::VectorXd g(ix(plus_.size()));
        for (std::size_t i = 0; i < plus_.size(); ++i) g[ix(i)] = inner.t * full[ix(plus_[i])] / root_[ix(i)];
        return g - g.dot(y) * y;
    }
};

struct Polished {
    Eigen::VectorXd u;
    double kkt = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped Newton on Phi'(u) = 0 with the merit KktReport::scaled(). The rotation
// orbit makes H nearly singular; eigen-directions with tiny curvature are dropped.
Polished newton_polish(const NehariProblem& problem, Eigen::VectorXd u, int steps, double tol) {
    Polished out;
    double merit = problem.kkt(u).scaled();
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    for (int it = 0; it < steps; ++it) {
        out.iterations = it;
        if (merit <= tol) {
            out.converged = true;
            break;
        }
        problem.evaluate(u, &grad, &hess);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
        if (es.info() != Eigen::Success) break;
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double cut = 1e-10 * ev.cwiseAbs().maxCoeff();
        Eigen::VectorXd coef = es.eigenvectors().transpose() * grad;
        for (Index i = 0; i < ev.size(); ++i) coef[i] = std::abs(ev[i]) > cut ? coef[i] / ev[i] : 0.0;
        const Eigen::VectorXd step = -(es.eigenvectors() * coef);
        bool accepted = false;
        double tau = 1.0;
        for (int ls = 0; ls < 12; ++ls, tau *= 0.5) {
            Eigen::VectorXd trial = u + tau * step;
            const double mt = problem.kkt(trial).scaled();
            if (mt < merit) {
                u = std::move(trial);
                merit = mt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (merit <= tol) out.converged = true;
    out.u = std::move(u);
    out.kkt = merit;
    return out;
}

} // namespace

NehariResult ground_state(const GalerkinBasis& basis, double p, const NehariOptions& options) {
    check_p(p);
    const NehariProblem problem(basis, p);
    const SphereDescent descent(problem, options.inner_tol);
    const std::size_t dim = descent.dimension();

    // Starting directions: the lowest-lambda E+ modes, slightly perturbed so that
    // symmetric starts are not trapped in a reflection-invariant subspace.
    std::vector<std::size_t> order(dim);
    for (std::size_t i = 0; i < dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return basis.entries[descent.plus()[a]].lambda < basis.entries[descent.plus()[b]].lambda;
    });
    const std::size_t n_starts = std::min<std::size_t>(dim, static_cast<std::size_t>(std::max(1, options.starts)));
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    std::vector<Eigen::VectorXd> starts;
    for (std::size_t s = 0; s < n_starts; ++s) {
        Eigen::VectorXd y(ix(dim));
        for (Index i = 0; i < ix(dim); ++i) y[i] = normal(rng);
        y *= 0.02 / y.norm();
        y[ix(order[s])] += 1.0;
        starts.push_back(std::move(y));
    }
    std::vector<SphereDescent::State> runs(n_starts);
    parallel_for(n_starts, [&](std::size_t s) {
        runs[s] = descent.start(starts[s]);
        descent.run(runs[s], options.screening_iterations, options.outer_tol);
    });
    std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.psi < b.psi; });
    runs.resize(std::min<std::size_t>(runs.size(), static_cast<std::size_t>(std::max(1, options.polish_starts))));
    // Each polished start ends at a critical point; all of them lie on the Nehari
    // set so their energies are >= c and the lowest is kept. A Newton result is
    // only trusted when it did not climb above the descent level.
    struct Candidate {
        Eigen::VectorXd u;
        double energy = 0.0;
        double t = 0.0;
        double outer_gradient = 0.0;
        int outer_iterations = 0;
        int newton_iterations = 0;
        bool converged = false;
    };
    std::vector<Candidate> candidates(runs.size());
    parallel_for(runs.size(), [&](std::size_t i) {
        auto& r = runs[i];
        descent.run(r, options.max_outer_iterations, options.outer_tol);
        Candidate c{r.inner.u, r.psi, r.inner.t, r.grad.norm(), r.iterations, 0, r.converged && r.inner.converged};
        if (options.newton_steps > 0) {
            const Polished pol = newton_polish(problem, r.inner.u, options.newton_steps, options.newton_tol);
            const double e = problem.energy(pol.u);
            c.newton_iterations = pol.iterations;
            if (e > 0.0 && e <= r.psi * (1.0 + 1e-7) && pol.kkt < problem.kkt(c.u).scaled()) {
                c.u = pol.u;
                c.energy = e;
                c.converged = c.converged || pol.converged;
            }
        }
        candidates[i] = std::move(c);
    });
    const auto& best = *std::min_element(candidates.begin(), candidates.end(),
                                         [](const auto& a, const auto& b) { return a.energy < b.energy; });

    NehariResult out;
    out.alpha = basis.alpha;
    out.m = basis.m;
    out.p = p;
    out.j_cut = basis.j_cut;
    out.basis_size = basis.size();
    out.plus_size = dim;
    // Node doubling: polish on finer rules until the energy is resolved.
    Eigen::VectorXd u = best.u;
    bool newton_ok = best.converged;
    int refine = 1;
    std::optional<NehariProblem> current;  // the problem at `refine` when refine > 1
    auto at = [&]() -> const NehariProblem& { return current ? *current : problem; };
    double energy = best.energy;
    double discrepancy = 0.0;
    for (;;) {
        const NehariProblem doubled(basis, p, 2 * refine);
        discrepancy = std::abs(doubled.energy(u) - energy) / std::abs(energy);
        if (discrepancy <= options.resolution_tol || 2 * refine > options.max_refine) break;
        refine *= 2;
        current.emplace(basis, p, refine);
        const Polished pol = newton_polish(*current, u, std::max(options.newton_steps, 1), options.newton_tol);
        u = pol.u;
        newton_ok = pol.converged;
        energy = current->energy(u);
    }
    const NehariProblem& final_problem = at();

    out.coefficients = u;
    out.energy = energy;
    {
        // t = |P+ u|_E
        double s = 0.0;
        for (std::size_t a : basis.plus) s += basis.entries[a].lambda * u[ix(a)] * u[ix(a)];
        out.t = std::sqrt(s);
    }
    const KktReport kkt = final_problem.kkt(u);
    out.nehari_residual = kkt.nehari;
    out.f_residual = kkt.f_directions;
    out.plus_residual = kkt.plus_directions;
    out.kkt_residual = kkt.scaled();
    out.outer_gradient = best.outer_gradient;
    out.outer_iterations = best.outer_iterations;
    out.newton_iterations = best.newton_iterations;
    out.quadrature_discrepancy = discrepancy;
    out.quadrature_refine = refine;
    out.resolved = discrepancy <= options.resolution_tol;
    out.converged = (newton_ok || out.kkt_residual <= options.newton_tol * 1e3) && out.resolved;
    out.nonradial_energy_fraction = nonradial_energy_fraction(basis, u);
    out.upper_bound = upper_bound_c(basis, p);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto& e = basis.entries[a];
        out.labelled.push_back({e.ell, e.k, e.parity, out.coefficients[ix(a)]});
    }
    return out;
}

NehariResult ground_state(double alpha, double m, double p, double j_cut, const NehariOptions& options) {
    check_p(p);
    const GalerkinBasis basis = galerkin::assemble_basis(alpha, m, j_cut);
    return ground_state(basis, p, options);
}

double upper_bound_c(double alpha, double m, double p, int ell_max, int k_max) {
    if (!(p > 2.0)) throw DomainError("upper_bound_c: requires p > 2");
    const double lmin = spectrum::min_positive_eigenvalue(alpha, m, ell_max, k_max).lambda;
    return (0.5 - 1.0 / p) * pi * std::pow(lmin, p / (p - 2.0));
}

double upper_bound_c(const GalerkinBasis& basis, double p) {
    if (!(p > 2.0)) throw DomainError("upper_bound_c: requires p > 2");
    double lmin = std::numeric_limits<double>::infinity();
    for (std::size_t a : basis.plus) lmin = std::min(lmin, basis.entries[a].lambda);
    return (0.5 - 1.0 / p) * pi * std::pow(lmin, p / (p - 2.0));
}

RadialResult radial_ground_state(double m, double p, const radial::RadialOptions& options) {
    if (!(m >= 0.0)) throw DomainError("radial_ground_state: requires m >= 0");
    const radial::RadialSolution s = radial::solve_profile(m, 0, p, options);
    for (std::size_t i = 0; i + 1 < s.z.size(); ++i)
        if (!(s.z[i] > 0.0)) throw NumericError("radial_ground_state: profile not positive in (0,1)");
    RadialResult r;
    r.m = m;
    r.p = p;
    r.r = s.r;
    r.profile = s.z;
    r.quotient = s.quotient();
    r.beta_rad = (0.5 - 1.0 / p) * std::pow(r.quotient, p / (p - 2.0));
    r.weak_residual = s.weak_residual;
    return r;
}

VkResult complex_vk_minimizer(double alpha, double m, int k, double p, const radial::RadialOptions& options) {
    if (k < 1) throw DomainError("complex_vk_minimizer: requires k >= 1");
    if (!(p > 2.0)) throw DomainError("complex_vk_minimizer: requires p > 2");
    const double j01 = specfun::bessel_j_zero(0.0, 1).value;
    const double shift = m - alpha * alpha * k * k;
    if (!(shift > -j01 * j01)) throw DomainError("complex_vk_minimizer: requires m - alpha^2 k^2 > -j_{0,1}^2");

    // z solves the Euler-Lagrange equation with multiplier 1; u0 = z/|z|_p then has
    // multiplier K0 = J(u0) = |z|_p^{p-2} and K0^{1/(p-2)} u0 = z.
    const radial::RadialSolution s = radial::solve_profile(shift, k, p, options);
    VkResult out;
    out.alpha = alpha;
    out.m = m;
    out.k = k;
    out.p = p;
    out.r = s.r;
    const double norm_p = std::pow(s.power, 1.0 / p);
    out.k0 = std::pow(norm_p, p - 2.0);
    out.solution = s.z;
    out.minimizer.resize(s.z.size());
    for (std::size_t i = 0; i < s.z.size(); ++i) out.minimizer[i] = s.z[i] / norm_p;
    out.weak_residual = s.weak_residual;

    constexpr int n_theta = 64;
    for (std::size_t i = 0; i < s.r.size(); i += 25) {
        double mean = 0.0, sq = 0.0;
        for (int q = 0; q < n_theta; ++q) {
            const double th = 2.0 * pi * q / n_theta;
            const double mod = std::abs(std::polar(out.minimizer[i], k * th));
            mean += mod;
            sq += mod * mod;
        }
        mean /= n_theta;
        out.angular_variance = std::max(out.angular_variance, std::max(0.0, sq / n_theta - mean * mean));
    }
    return out;
}

CrossoverReport nonradiality_scan(double alpha, double p, const std::vector<double>& m_grid,
                                  const ScanOptions& options) {
    check_p(p);
    CrossoverReport rep;
    rep.alpha = alpha;
    rep.p = p;
    for (double m : m_grid) {
        ScanRow row;
        row.m = m;
        row.upper_bound = upper_bound_c(alpha, m, p, options.ell_max, options.k_max);
        row.beta_rad = radial_ground_state(m, p).beta_rad;
        const bool solve = options.solve_all || (!rep.crossover_m && row.upper_bound < row.beta_rad);
        if (solve) {
            const NehariResult gs = ground_state(alpha, m, p, options.j_cut, options.nehari);
            row.c_galerkin = gs.energy;
            row.nonradial_fraction = gs.nonradial_energy_fraction;
            row.kkt_residual = gs.kkt_residual;
        }
        row.below_radial = (row.c_galerkin ? *row.c_galerkin : row.upper_bound) < row.beta_rad;
        if (row.below_radial && !rep.crossover_m) rep.crossover_m = m;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace rotwave::groundstate
