#include "rotwave/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace rotwave::io {

using nlohmann::json;

namespace {

std::string parity_name(galerkin::Parity p) { return p == galerkin::Parity::cos ? "cos" : "sin"; }

json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json header(const char* kind) { return json{{"schema", kSchemaVersion}, {"kind", kind}}; }

json argmin_json(const spectrum::GapArgmin& a) {
    return json{{"ell", a.ell}, {"k", a.k}, {"branch", a.branch}};
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string zeros_csv(const std::vector<specfun::BesselZero>& zeros) {
    std::ostringstream os;
    os << "nu,k,value,lower,upper\n";
    for (const auto& z : zeros)
        os << format_double(z.order) << ',' << z.index << ',' << format_double(z.value) << ','
           << format_double(z.lower) << ',' << format_double(z.upper) << '\n';
    return os.str();
}

json zeros_json(const std::vector<specfun::BesselZero>& zeros) {
    json j = header("zeros");
    json rows = json::array();
    for (const auto& z : zeros)
        rows.push_back({{"nu", z.order}, {"k", z.index}, {"value", z.value}, {"lower", z.lower}, {"upper", z.upper}});
    j["zeros"] = std::move(rows);
    return j;
}

std::string sandwich_csv(const asymptotics::SandwichReport& report) {
    std::ostringstream os;
    os << "k,ratio_minus_iota,lower_bound,upper_bound,ok\n";
    for (const auto& r : report.rows)
        os << r.k << ',' << format_double(r.ratio_minus_iota) << ',' << format_double(r.lower_bound) << ','
           << format_double(r.upper_bound) << ',' << (r.ok ? 1 : 0) << '\n';
    return os.str();
}

json sandwich_json(const asymptotics::SandwichReport& report) {
    json j = header("sandwich");
    j["x"] = report.x;
    j["epsilon"] = report.epsilon;
    j["iota"] = report.iota;
    j["k_min"] = report.k_min;
    j["k_max"] = report.k_max;
    j["observed_k0"] = report.observed_k0 ? json(*report.observed_k0) : json(nullptr);
    j["strictly_below"] = report.strictly_below;
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({r.k, r.ratio_minus_iota, r.lower_bound, r.upper_bound, r.ok});
    j["rows"] = std::move(rows);
    j["columns"] = {"k", "ratio_minus_iota", "lower_bound", "upper_bound", "ok"};
    return j;
}

std::string alpha_csv(const std::vector<spectrum::AdmissibleAlpha>& rows) {
    std::ostringstream os;
    os << "n,sigma,alpha,residual,kappa,c_empirical\n";
    for (const auto& a : rows) {
        os << a.n << ',' << format_double(a.sigma) << ',' << format_double(a.alpha) << ','
           << format_double(a.residual) << ',' << format_double(a.kappa) << ',';
        if (a.c_empirical) os << format_double(*a.c_empirical);
        os << '\n';
    }
    return os.str();
}

json alpha_json(const std::vector<spectrum::AdmissibleAlpha>& rows) {
    json j = header("alpha_sequence");
    json out = json::array();
    for (const auto& a : rows)
        out.push_back({{"n", a.n},
                       {"sigma", a.sigma},
                       {"alpha", a.alpha},
                       {"residual", a.residual},
                       {"kappa", a.kappa},
                       {"c_empirical", optional_number(a.c_empirical)}});
    j["rows"] = std::move(out);
    return j;
}

std::string spectrum_csv(const spectrum::SpectrumWindow& window) {
    std::ostringstream os;
    os << "ell,k,j,lambda,class\n";
    for (const auto& p : window.points)
        os << p.ell << ',' << p.k << ',' << format_double(p.j_value) << ',' << format_double(p.lambda) << ','
           << spectrum::to_string(p.sign_class) << '\n';
    return os.str();
}

json spectrum_json(const spectrum::SpectrumWindow& window) {
    json j = header("spectrum");
    j["alpha"] = window.alpha;
    j["m"] = window.m;
    j["mu"] = window.mu;
    j["cutoffs"] = {{"ell_max", window.ell_max}, {"k_max", window.k_max}};
    j["kernel_tol"] = window.kernel_tol;
    j["min_abs_nonkernel"] = number(window.min_abs_nonkernel);
    j["min_gap_ratio"] = number(window.min_gap_ratio);
    j["argmin"] = argmin_json(window.argmin);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : window.points) counts[static_cast<int>(p.sign_class)] += p.multiplicity;
    j["counts"] = {{"positive", counts[0]}, {"kernel", counts[1]}, {"negative", counts[2]}};
    return j;
}

json nehari_json(const groundstate::NehariResult& r) {
    json j = header("ground_state");
    j["alpha"] = r.alpha;
    j["m"] = r.m;
    j["p"] = r.p;
    j["j_cut"] = r.j_cut;
    j["basis_size"] = r.basis_size;
    j["plus_size"] = r.plus_size;
    j["energy"] = number(r.energy);
    j["t"] = number(r.t);
    j["kkt_residual"] = number(r.kkt_residual);
    j["nehari_residual"] = number(r.nehari_residual);
    j["f_residual"] = number(r.f_residual);
    j["plus_residual"] = number(r.plus_residual);
    j["outer_gradient"] = number(r.outer_gradient);
    j["outer_iterations"] = r.outer_iterations;
    j["newton_iterations"] = r.newton_iterations;
    j["converged"] = r.converged;
    j["nonradial_energy_fraction"] = number(r.nonradial_energy_fraction);
    j["upper_bound"] = number(r.upper_bound);
    j["quadrature_discrepancy"] = number(r.quadrature_discrepancy);
    j["quadrature_refine"] = r.quadrature_refine;
    j["resolved"] = r.resolved;
    json coeffs = json::array();
    for (const auto& c : r.labelled) coeffs.push_back({c.ell, c.k, parity_name(c.parity), c.value});
    j["coefficients"] = std::move(coeffs);
    return j;
}

std::string nehari_csv(const groundstate::NehariResult& r) {
    std::ostringstream os;
    os << "ell,k,parity,value\n";
    for (const auto& c : r.labelled)
        os << c.ell << ',' << c.k << ',' << parity_name(c.parity) << ',' << format_double(c.value) << '\n';
    return os.str();
}

std::string profile_csv(const std::vector<double>& r, const std::vector<double>& values) {
    std::ostringstream os;
    os << "r,value\n";
    for (std::size_t i = 0; i < r.size() && i < values.size(); ++i)
        os << format_double(r[i]) << ',' << format_double(values[i]) << '\n';
    return os.str();
}

json radial_json(const groundstate::RadialResult& r) {
    json j = header("radial");
    j["m"] = r.m;
    j["p"] = r.p;
    j["beta_rad"] = number(r.beta_rad);
    j["quotient"] = number(r.quotient);
    j["weak_residual"] = number(r.weak_residual);
    j["profile"] = {{"r", r.r}, {"value", r.profile}};
    return j;
}

json vk_json(const groundstate::VkResult& r) {
    json j = header("vk");
    j["alpha"] = r.alpha;
    j["m"] = r.m;
    j["k"] = r.k;
    j["p"] = r.p;
    j["k0"] = number(r.k0);
    j["weak_residual"] = number(r.weak_residual);
    j["angular_variance"] = number(r.angular_variance);
    j["profile"] = {{"r", r.r}, {"value", r.minimizer}};
    return j;
}

json scan_json(const groundstate::CrossoverReport& rep) {
    json j = header("scan");
    j["alpha"] = rep.alpha;
    j["p"] = rep.p;
    j["crossover_m"] = optional_number(rep.crossover_m);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"m", r.m},
                        {"upper_bound", number(r.upper_bound)},
                        {"beta_rad", number(r.beta_rad)},
                        {"energy", optional_number(r.c_galerkin)},
                        {"nonradial_energy_fraction", optional_number(r.nonradial_fraction)},
                        {"kkt_residual", optional_number(r.kkt_residual)},
                        {"below_radial", r.below_radial}});
    j["rows"] = std::move(rows);
    return j;
}

std::string scan_csv(const groundstate::CrossoverReport& rep) {
    std::ostringstream os;
    os << "m,upper_bound,beta_rad,energy,nonradial_energy_fraction,kkt_residual,below_radial\n";
    auto opt = [&](const std::optional<double>& x) {
        if (x) os << format_double(*x);
    };
    for (const auto& r : rep.rows) {
        os << format_double(r.m) << ',' << format_double(r.upper_bound) << ',' << format_double(r.beta_rad) << ',';
        opt(r.c_galerkin);
        os << ',';
        opt(r.nonradial_fraction);
        os << ',';
        opt(r.kkt_residual);
        os << ',' << (r.below_radial ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace rotwave::io
