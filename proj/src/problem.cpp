#include "dgel/problem.hpp"

#include <cmath>
#include <string>

#include "dgel/errors.hpp"

namespace dgel {

namespace {

constexpr int lattice_n = 48;        // validation lattice per direction, boundary included
constexpr int growth_samples = 2048;

void check_growth_at(const ProblemSpec& s, double t) {
    const auto p = s.phi(t);
    const double norm = std::hypot(p[0], p[1]);
    const double bound = *s.phi_growth_C * t * t;
    // Grace term covers roundoff in |phi| only; the bound itself is exact.
    if (norm > bound + 1e-12 * (1.0 + bound))
        throw GrowthAssumptionViolated(t, norm, bound);
}

} // namespace

void check_bounds_at(const ProblemSpec& s, double x, double y) {
    const double a = s.a_field(x, y);
    const double b = s.b_field(x, y);
    auto at = [&](const char* what, double v) {
        return std::string(what) + " (got " + std::to_string(v) + " at x=" + std::to_string(x) +
               ", y=" + std::to_string(y) + ")";
    };
    if (!(a >= s.alpha))
        throw AssumptionViolation(at("assumption alpha <= a(x) violated", a));
    if (!(a <= s.beta))
        throw AssumptionViolation(at("assumption a(x) <= beta violated", a));
    if (!(b >= 0.0))
        throw AssumptionViolation(at("assumption 0 <= b(x) violated", b));
    if (!(b <= s.B_bound))
        throw AssumptionViolation(at("assumption b(x) <= B violated", b));
}

ProblemSpec ProblemSpec::create(ProblemSpec raw) {
    if (!(raw.lx > 0.0) || !(raw.ly > 0.0))
        throw AssumptionViolation("domain lengths must be positive");
    if (!(raw.alpha > 0.0))
        throw AssumptionViolation("assumption 0 < alpha violated");
    if (!(raw.beta >= raw.alpha))
        throw AssumptionViolation("assumption alpha <= beta violated");
    if (!(raw.B_bound >= 0.0))
        throw AssumptionViolation("assumption 0 <= B violated");
    if (!(raw.theta >= 0.0))
        throw AssumptionViolation("theta must be >= 0");
    if (!raw.a_field || !raw.b_field || !raw.f_data)
        throw AssumptionViolation("a, b and f must all be provided");
    if (raw.phi_growth_C && !(*raw.phi_growth_C >= 0.0))
        throw AssumptionViolation("phi growth constant must be >= 0");
    if (raw.phi_growth_C && !raw.phi)
        throw AssumptionViolation("a growth constant was declared without a flux");

    double f_inf = 0.0;
    for (int j = 0; j <= lattice_n; ++j) {
        for (int i = 0; i <= lattice_n; ++i) {
            const double x = raw.lx * i / lattice_n;
            const double y = raw.ly * j / lattice_n;
            check_bounds_at(raw, x, y);
            f_inf = std::max(f_inf, std::fabs(raw.f_data(x, y)));
        }
    }

    if (raw.phi_growth_C) {
        // Sample the growth bound over the range of values a solve can ever
        // feed into the flux, with a wide safety factor.
        const double horizon = 10.0 * std::max(1.0, f_inf);
        for (int i = 0; i <= growth_samples; ++i)
            check_growth_at(raw, -horizon + 2.0 * horizon * i / growth_samples);
        check_growth_at(raw, 0.0);
    }
    return raw;
}

std::array<double, 2> phi_eval(const ProblemSpec& spec, double t) {
    if (!spec.phi) return {0.0, 0.0};
    if (spec.phi_growth_C) check_growth_at(spec, t);
    return spec.phi(t);
}

void check_coefficient_bounds(const ProblemSpec& spec, const Grid& grid) {
    for (int j = -1; j <= grid.ny; ++j)
        for (int i = -1; i <= grid.nx; ++i)
            check_bounds_at(spec, (i + 1) * grid.hx(), (j + 1) * grid.hy());
}

} // namespace dgel
