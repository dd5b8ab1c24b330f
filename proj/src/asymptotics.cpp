#include "rotwave/asymptotics.hpp"

#include "rotwave/error.hpp"
#include "rotwave/parallel.hpp"
#include "rotwave/specfun.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace rotwave::asymptotics {

namespace {

constexpr double pi = std::numbers::pi;

// sin(d) - d cos(d), with its Taylor series near 0 where the two terms cancel.
double sin_minus_dcos(double d) {
    if (std::abs(d) < 0.1) {
        const double d2 = d * d;
        double term = d * d2;  // d^{2n+1}/(2n+1)! * (2n), n = 1
        double sum = 0.0;
        double fact = 6.0;     // (2n+1)!
        for (int n = 1; n <= 8; ++n) {
            sum += (n % 2 == 1 ? 1.0 : -1.0) * 2.0 * n * term / fact;
            term *= d2;
            fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
        }
        return sum;
    }
    return std::sin(d) - d * std::cos(d);
}

// t - atan(t), series near 0.
double t_minus_atan(double t) {
    if (std::abs(t) < 0.05) {
        const double t2 = t * t;
        double term = t * t2;
        double sum = 0.0;
        for (int n = 1; n <= 8; ++n) {
            sum += (n % 2 == 1 ? 1.0 : -1.0) * term / (2.0 * n + 1.0);
            term *= t2;
        }
        return sum;
    }
    return t - std::atan(t);
}

} // namespace

IotaPoint iota(double x) {
    if (!(x > -1.0) || !std::isfinite(x)) throw DomainError("iota: requires finite x > -1");
    if (x == 0.0) return {0.0, 0.0, pi};

    // With d = pi/2 - phi the angle equation reads cos(d)/(sin d - d cos d) = x/pi,
    // whose left side decreases strictly from +inf (d -> 0) to -1/pi (d -> pi).
    const double target = x / pi;
    auto lhs = [](double d) { return std::cos(d) / sin_minus_dcos(d); };
    double lo = 0.0, hi = pi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (lhs(mid) > target) lo = mid;
        else hi = mid;
    }
    const double d = 0.5 * (lo + hi);
    return {x, 0.5 * pi - d, pi / sin_minus_dcos(d)};
}

double iota_ratio(double x) {
    if (!(x > 0.0)) throw DomainError("iota_ratio: requires x > 0");
    return iota(x).iota / x;
}

double f_inverse(double y) {
    if (!(y > 1.0) || !std::isfinite(y)) throw DomainError("f_inverse: requires finite y > 1");
    // pi/2 - arcsin(1/y) = atan(sqrt(y^2 - 1))
    const double t = std::sqrt((y - 1.0) * (y + 1.0));
    return pi / t_minus_atan(t);
}

double G_closed(double y, double x) {
    if (!(y > 0.0)) throw DomainError("G_closed: requires y > 0");
    const double z = x / y;
    if (!(std::abs(z) < 1.0)) throw DomainError("G_closed: requires |x/y| < 1");
    if (z == 0.0) return 0.5 * pi;
    return std::acos(z) / std::sqrt((1.0 - z) * (1.0 + z));
}

double g_ratio(double t) {
    if (!(t >= 1.0)) throw DomainError("g_ratio: requires t >= 1");
    // arccos(1/t) = atan(q), sqrt(1 - 1/t^2) = q/t with q = sqrt(t^2 - 1)
    const double q = std::sqrt((t - 1.0) * (t + 1.0));
    if (q < 1e-4) return t * (1.0 - q * q / 3.0 + q * q * q * q / 5.0);
    return t * std::atan(q) / q;
}

IotaTable iota_via_ode(double x_max, double rtol, double dx) {
    if (!(x_max > 0.0)) throw DomainError("iota_via_ode: requires x_max > 0");
    if (!(rtol > 0.0) || !(dx > 0.0)) throw DomainError("iota_via_ode: tolerances must be > 0");
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 1>;

    IotaTable table;
    const auto n = static_cast<std::size_t>(std::floor(x_max / dx + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) table.x.push_back(static_cast<double>(i) * dx);
    if (x_max - table.x.back() > 1e-12 * x_max) table.x.push_back(x_max);

    auto rhs = [](const State& s, State& ds, double x) { ds[0] = G_closed(s[0], x); };
    auto observe = [&](const State& s, double) { table.iota.push_back(s[0]); };
    State s{pi};
    auto stepper = odeint::make_dense_output(1e-2 * rtol, rtol, odeint::runge_kutta_dopri5<State>());
    table.steps = odeint::integrate_times(stepper, rhs, s, table.x.begin(), table.x.end(),
                                          std::min(dx, 1e-3), observe);
    if (table.iota.size() != table.x.size())
        throw NumericError("iota_via_ode: integration stopped early");
    return table;
}

double iota_k(double x, int k) {
    if (!(x > 0.0)) throw DomainError("iota_k: requires x > 0");
    if (k < 1) throw DomainError("iota_k: requires k >= 1");
    return specfun::bessel_j_zero(x * k, k).value / k;
}

SandwichReport verify_sandwich(double x, double epsilon, int k_min, int k_max) {
    if (!(x > 0.0)) throw DomainError("verify_sandwich: requires x > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("verify_sandwich: requires eps in (0,1)");
    if (k_min < 1 || k_max < k_min) throw DomainError("verify_sandwich: requires 1 <= k_min <= k_max");

    SandwichReport report;
    report.x = x;
    report.epsilon = epsilon;
    report.k_min = k_min;
    report.k_max = k_max;
    report.iota = iota(x).iota;
    report.rows.resize(static_cast<std::size_t>(k_max - k_min + 1));

    const double growth = std::exp((1.0 / 3.0 + epsilon) * x);
    parallel_for(report.rows.size(), [&](std::size_t i) {
        SandwichRow& row = report.rows[i];
        row.k = k_min + static_cast<int>(i);
        const double quarter = pi / (4.0 * row.k);
        row.ratio_minus_iota = iota_k(x, row.k) - report.iota;
        row.lower_bound = -growth * quarter;
        row.upper_bound = -(1.0 - epsilon) * quarter;
        row.ok = row.lower_bound <= row.ratio_minus_iota && row.ratio_minus_iota <= row.upper_bound;
    });

    report.strictly_below = true;
    for (const auto& row : report.rows)
        if (!(row.ratio_minus_iota < 0.0)) report.strictly_below = false;
    for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->ok; ++it)
        report.observed_k0 = it->k;
    return report;
}

double admissible_sigma_condition(int m, int n) {
    if (m < 1 || n < 1) throw DomainError("admissible_sigma_condition: requires m, n >= 1");
    const double mm = m, nn = n;
    return std::sqrt(1.0 / (nn * nn) + pi * pi / (mm * mm)) -
           pi * (1.0 / (2.0 * nn) + std::exp(mm / (3.0 * nn)) / 4.0);
}

} // namespace rotwave::asymptotics
