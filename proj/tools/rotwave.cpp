// rotwave command-line front end.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 numerical failure.

#include "rotwave/asymptotics.hpp"
#include "rotwave/error.hpp"
#include "rotwave/groundstate.hpp"
#include "rotwave/io.hpp"
#include "rotwave/specfun.hpp"
#include "rotwave/spectrum.hpp"
#include "rotwave/zero_cache.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rotwave;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Output {
    std::string format = "json";
    std::string path;
};

struct Velocity {
    std::optional<double> alpha;
    std::optional<int> n;

    double resolve() const {
        if (alpha && n) throw ConfigError("give either --alpha or --alpha-n, not both");
        if (n) {
            if (*n < 1) throw ConfigError("--alpha-n must be >= 1");
            return spectrum::alpha_n(*n).alpha;
        }
        if (alpha) {
            if (!std::isfinite(*alpha) || *alpha < 0.0) throw ConfigError("--alpha must be finite and >= 0");
            return *alpha;
        }
        throw ConfigError("one of --alpha or --alpha-n is required");
    }
};

// "a..b" or "a,b,c" or "a"
std::vector<int> parse_int_range(const std::string& s) {
    std::vector<int> out;
    const auto dots = s.find("..");
    try {
        if (dots != std::string::npos) {
            const int a = std::stoi(s.substr(0, dots));
            const int b = std::stoi(s.substr(dots + 2));
            if (b < a) throw ConfigError("empty range " + s);
            for (int i = a; i <= b; ++i) out.push_back(i);
            return out;
        }
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse integer range '" + s + "'");
    }
    if (out.empty()) throw ConfigError("empty range");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse number list '" + s + "'");
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

void check_p_ground(double p) {
    if (!(p > 2.0 && p < 4.0)) throw ConfigError("--p must lie in (2, 4)");
}

void check_cutoffs(int ell_max, int k_max) {
    if (ell_max < 0 || ell_max > static_cast<int>(specfun::kMaxOrder))
        throw ConfigError("--lmax must lie in [0, " + std::to_string(static_cast<int>(specfun::kMaxOrder)) + "]");
    if (k_max < 1 || k_max > specfun::kMaxIndex)
        throw ConfigError("--kmax must lie in [1, " + std::to_string(specfun::kMaxIndex) + "]");
}

void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + out.path);
    f << text;
}

void emit(const Output& out, const nlohmann::json& j, const std::string& csv) {
    emit(out, out.format == "csv" ? csv : j.dump(2) + "\n");
}

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out.path, "write to PATH instead of stdout");
}

void add_velocity(CLI::App* cmd, Velocity& v) {
    cmd->add_option("--alpha", v.alpha, "rotation speed");
    cmd->add_option("--alpha-n", v.n, "use the admissible speed alpha_n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotating waves on the disk: Bessel zeros, spectra, ground states"};
    app.require_subcommand(1);
    Output out;

    // zeros
    auto* zeros = app.add_subcommand("zeros", "Bessel zeros with enclosures");
    std::string z_nu = "0", z_k = "1..5";
    bool z_no_cache = false;
    zeros->add_option("--nu", z_nu, "orders, comma separated");
    zeros->add_option("--k", z_k, "indices, a..b or comma separated");
    zeros->add_flag("--no-cache", z_no_cache, "do not read or write the zero cache");
    add_output(zeros, out);

    // alpha-seq
    auto* alpha_seq = app.add_subcommand("alpha-seq", "Admissible speeds alpha_n, kappa_n and gap estimates");
    std::string a_n = "1..10";
    int a_lmax = 500, a_kmax = 500;
    bool a_no_gap = false;
    alpha_seq->add_option("--n", a_n, "indices, a..b or comma separated");
    alpha_seq->add_option("--lmax", a_lmax, "cutoff in l for c_empirical");
    alpha_seq->add_option("--kmax", a_kmax, "cutoff in k for c_empirical");
    alpha_seq->add_flag("--no-gap", a_no_gap, "skip the c_empirical scan");
    add_output(alpha_seq, out);

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Eigenvalues j^2 - alpha^2 l^2 + m");
    Velocity s_vel;
    double s_m = 0.0, s_mu = 0.0, s_tol = spectrum::kDefaultKernelTol;
    int s_lmax = 100, s_kmax = 100;
    add_velocity(spec, s_vel);
    spec->add_option("--m", s_m, "mass");
    spec->add_option("--mu", s_mu, "frequency shift (both branches)");
    spec->add_option("--lmax", s_lmax, "cutoff in l");
    spec->add_option("--kmax", s_kmax, "cutoff in k");
    spec->add_option("--kernel-tol", s_tol, "|lambda| <= tol * j counts as kernel");
    add_output(spec, out);

    // sandwich
    auto* sandwich = app.add_subcommand("sandwich", "Finite-k correction of j_{xk,k}/k against iota(x)");
    double w_x = 1.0, w_eps = 0.1;
    int w_kmin = 1, w_kmax = 500;
    sandwich->add_option("--x", w_x, "ray slope");
    sandwich->add_option("--eps", w_eps, "epsilon in (0, 1)");
    sandwich->add_option("--kmin", w_kmin);
    sandwich->add_option("--kmax", w_kmax);
    add_output(sandwich, out);

    // ground
    auto* ground = app.add_subcommand("ground", "Galerkin ground state");
    Velocity g_vel;
    double g_m = 50.0, g_p = 3.0, g_jcut = 60.0;
    groundstate::NehariOptions g_opts;
    add_velocity(ground, g_vel);
    ground->add_option("--m", g_m, "mass");
    ground->add_option("--p", g_p, "exponent in (2, 4)");
    ground->add_option("--jcut", g_jcut, "keep modes with j <= jcut");
    ground->add_option("--starts", g_opts.starts, "starting directions");
    ground->add_option("--seed", g_opts.seed, "seed for start perturbations");
    ground->add_option("--outer-tol", g_opts.outer_tol);
    add_output(ground, out);

    // radial
    auto* radial = app.add_subcommand("radial", "Positive radial solution and its level");
    double r_m = 50.0, r_p = 3.0;
    radial::RadialOptions r_opts;
    radial->add_option("--m", r_m, "mass >= 0");
    radial->add_option("--p", r_p, "exponent > 2");
    radial->add_option("--elements", r_opts.elements, "finite elements");
    add_output(radial, out);

    // scan
    auto* scan = app.add_subcommand("scan", "Compare ground-state and radial levels over m");
    Velocity c_vel;
    double c_p = 3.0;
    std::string c_m = "10,100,1000,10000";
    groundstate::ScanOptions c_opts;
    add_velocity(scan, c_vel);
    scan->add_option("--p", c_p, "exponent in (2, 4)");
    scan->add_option("--m", c_m, "masses, comma separated");
    scan->add_option("--jcut", c_opts.j_cut);
    scan->add_option("--lmax", c_opts.ell_max, "cutoff in l for the upper bound");
    scan->add_option("--kmax", c_opts.k_max, "cutoff in k for the upper bound");
    scan->add_flag("--all", c_opts.solve_all, "solve the ground state at every m");
    add_output(scan, out);

    // vk
    auto* vk = app.add_subcommand("vk", "Constrained minimizer in the e^{ik theta} sector");
    Velocity v_vel;
    double v_m = 120.0, v_p = 3.0;
    int v_k = 1;
    radial::RadialOptions v_opts;
    add_velocity(vk, v_vel);
    vk->add_option("--m", v_m);
    vk->add_option("--k", v_k, "angular index >= 1");
    vk->add_option("--p", v_p, "exponent > 2");
    vk->add_option("--elements", v_opts.elements);
    add_output(vk, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (zeros->parsed()) {
            const std::vector<double> nus = parse_double_list(z_nu);
            const std::vector<int> ks = parse_int_range(z_k);
            std::optional<ZeroCache> cache;
            if (!z_no_cache) {
                if (const auto path = ZeroCache::default_path()) cache.emplace(*path);
            }
            std::vector<specfun::BesselZero> rows;
            for (double nu : nus)
                for (int k : ks) rows.push_back(cache ? cache->get(nu, k) : specfun::bessel_j_zero(nu, k));
            if (cache) cache->save();
            emit(out, io::zeros_json(rows), io::zeros_csv(rows));
        } else if (alpha_seq->parsed()) {
            const std::vector<int> ns = parse_int_range(a_n);
            check_cutoffs(a_lmax, a_kmax);
            std::vector<spectrum::AdmissibleAlpha> rows;
            for (int n : ns) {
                if (n < 1) throw ConfigError("--n entries must be >= 1");
                auto a = spectrum::alpha_n(n);
                if (!a_no_gap) a.c_empirical = spectrum::gap_constant(a.alpha, 0.0, a_lmax, a_kmax).c_estimate;
                rows.push_back(a);
            }
            emit(out, io::alpha_json(rows), io::alpha_csv(rows));
        } else if (spec->parsed()) {
            const double alpha = s_vel.resolve();
            check_cutoffs(s_lmax, s_kmax);
            const spectrum::SpectrumWindow w =
                s_mu != 0.0 ? spectrum::shifted_spectrum(alpha, s_m, s_mu, s_lmax, s_kmax, s_tol)
                            : spectrum::enumerate_spectrum(alpha, s_m, s_lmax, s_kmax, s_tol);
            if (out.format == "csv") emit(out, io::spectrum_csv(w));
            else emit(out, io::spectrum_json(w).dump(2) + "\n");
        } else if (sandwich->parsed()) {
            const auto rep = asymptotics::verify_sandwich(w_x, w_eps, w_kmin, w_kmax);
            emit(out, io::sandwich_json(rep), io::sandwich_csv(rep));
        } else if (ground->parsed()) {
            const double alpha = g_vel.resolve();
            check_p_ground(g_p);
            const auto res = groundstate::ground_state(alpha, g_m, g_p, g_jcut, g_opts);
            emit(out, io::nehari_json(res), io::nehari_csv(res));
            if (!res.converged) {
                std::cerr << "ground: not converged (kkt residual " << res.kkt_residual << ")\n";
                return kExitNumeric;
            }
        } else if (radial->parsed()) {
            const auto res = groundstate::radial_ground_state(r_m, r_p, r_opts);
            emit(out, io::radial_json(res), io::profile_csv(res.r, res.profile));
        } else if (scan->parsed()) {
            const double alpha = c_vel.resolve();
            check_p_ground(c_p);
            check_cutoffs(c_opts.ell_max, c_opts.k_max);
            const auto rep = groundstate::nonradiality_scan(alpha, c_p, parse_double_list(c_m), c_opts);
            emit(out, io::scan_json(rep), io::scan_csv(rep));
        } else if (vk->parsed()) {
            const double alpha = v_vel.resolve();
            const auto res = groundstate::complex_vk_minimizer(alpha, v_m, v_k, v_p, v_opts);
            emit(out, io::vk_json(res), io::profile_csv(res.r, res.minimizer));
        }
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        // DomainError, RangeError, ConfigError and I/O problems
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
