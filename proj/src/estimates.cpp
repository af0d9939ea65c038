#include "dgel/estimates.hpp"

#include <cmath>
#include <cstdio>

#include "dgel/errors.hpp"
#include "dgel/kernels.hpp"
#include "dgel/quadrature.hpp"
#include "dgel/scalar_ops.hpp"

namespace dgel {

double slack_budget(const Grid& grid, double f_l2) {
    return 10.0 * grid.h() * (1.0 + f_l2 + f_l2 * f_l2);
}

bool EstimateReport::all_pass() const {
    if (!energy_pass) return false;
    for (const auto& r : rows)
        if (!r.tail_pass || !r.chebyshev_pass || !r.trunc_pass) return false;
    return true;
}

bool ResidualReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

namespace {

// Interior value with the zero boundary ring extended.
double at(const GridFunction& v, int i, int j) {
    const Grid& g = v.grid();
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) return 0.0;
    return v(i, j);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

EstimateReport verify_apriori(const std::string& instance, const GridFunction& u,
                              const GridFunction& f, const ProblemSpec& spec,
                              const std::vector<double>& k_list) {
    u.require_conformable(f, "verify_apriori data");
    const Grid& g = u.grid();
    const double hx = g.hx(), hy = g.hy(), cell = hx * hy;

    EstimateReport report;
    report.instance = instance;
    report.f_l2 = norm_l2(f);
    report.slack = slack_budget(g, report.f_l2);

    // Weighted energy against the squared data norm. The weight uses the
    // worst-case denominator over the two edge endpoints, which lies below
    // the harmonic-mean weight actually assembled.
    const double B = spec.B_bound, theta = spec.theta;
    double energy = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = -1; i < g.nx; ++i) {
            const double ul = at(u, i, j), ur = at(u, i + 1, j);
            const double du = (ur - ul) / hx;
            const double m = std::max(std::fabs(ul), std::fabs(ur));
            energy += du * du / std::pow(1.0 + B * m, theta) * cell;
        }
    }
    for (int j = -1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double us = at(u, i, j), un = at(u, i, j + 1);
            const double du = (un - us) / hy;
            const double m = std::max(std::fabs(us), std::fabs(un));
            energy += du * du / std::pow(1.0 + B * m, theta) * cell;
        }
    }
    report.lhs_energy = spec.alpha * energy;
    report.rhs_energy = report.f_l2 * report.f_l2;
    report.energy_pass = report.lhs_energy <= report.rhs_energy + report.slack;

    double f_l1 = norm_l1(f);
    for (double k : k_list) {
        AprioriRow row;
        row.k = k;

        // Tail of the solution against the tail of the data over the same
        // level set, plus the Chebyshev consequence for the set's measure.
        int count = 0;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                if (std::fabs(u(i, j)) >= k) {
                    row.lhs_tail += u(i, j) * u(i, j) * cell;
                    row.rhs_tail += f(i, j) * f(i, j) * cell;
                    ++count;
                }
            }
        }
        row.tail_pass = row.lhs_tail <= row.rhs_tail + report.slack;
        row.level_measure = count * cell;
        row.chebyshev_bound = k > 0.0 ? row.rhs_tail / (k * k) : g.lx * g.ly;
        row.chebyshev_pass = row.level_measure <= row.chebyshev_bound + report.slack;

        row.lhs_trunc = spec.alpha * grad_sq_edges(truncate(u, k));
        row.rhs_trunc = k * std::pow(1.0 + B * k, theta) * f_l1;
        row.trunc_pass = row.lhs_trunc <= row.rhs_trunc + report.slack;
        report.rows.push_back(row);
    }
    return report;
}

double distributional_residual(const GridFunction& u, const GridFunction& f,
                               const ProblemSpec& spec, const TestFunction& phi,
                               FluxScheme scheme) {
    return std::fabs(distributional_residual_signed(u, f, spec, phi, scheme));
}

double distributional_residual_signed(const GridFunction& u, const GridFunction& f,
                                      const ProblemSpec& spec, const TestFunction& phi,
                                      FluxScheme scheme) {
    u.require_conformable(f, "distributional_residual data");
    u.require_conformable(phi.values, "distributional_residual test function");
    if (spec.has_flux() && !spec.phi_growth_C)
        throw AssumptionViolation(
            "distributional residual needs the quadratic growth constant for the flux");

    const Grid& g = u.grid();
    const double hx = g.hx(), hy = g.hy(), cell = hx * hy;

    AssemblyContext ctx(spec, g);
    const double height = kernels::par::max_abs(f.values()) + 1.0;
    EdgeData ed = edge_data(ctx, FrozenState{u, height}, scheme);

    // Gradient pairing at the x/y edge midpoints; grid-backed test functions
    // pair with the same difference quotients the operator itself uses.
    const bool with_flux = !ed.flux_x.empty();
    double diffusion = 0.0, convection = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = -1; i < g.nx; ++i) {
            const double du = (at(u, i + 1, j) - at(u, i, j)) / hx;
            const double gphi = phi.has_gradient
                                    ? phi.dx((i + 1.5) * hx, y)
                                    : (at(phi.values, i + 1, j) - at(phi.values, i, j)) / hx;
            const std::size_t e = ed.ex(i, j);
            diffusion += ed.mu_x[e] * du * gphi * cell;
            if (with_flux) convection += ed.flux_x[e] * gphi * cell;
        }
    }
    for (int j = -1; j < g.ny; ++j) {
        const double ym = (j + 1.5) * hy;
        for (int i = 0; i < g.nx; ++i) {
            const double du = (at(u, i, j + 1) - at(u, i, j)) / hy;
            const double gphi = phi.has_gradient
                                    ? phi.dy(g.x(i), ym)
                                    : (at(phi.values, i, j + 1) - at(phi.values, i, j)) / hy;
            const std::size_t e = ed.ey(i, j);
            diffusion += ed.mu_y[e] * du * gphi * cell;
            if (with_flux) convection += ed.flux_y[e] * gphi * cell;
        }
    }

    const double zero_order = kernels::par::dot(u.values(), phi.values.values()) * cell;
    const double data = kernels::par::dot(f.values(), phi.values.values()) * cell;
    return diffusion + zero_order - data - convection;
}

EntropyResidual entropy_residual(const GridFunction& u, const GridFunction& f,
                                 const ProblemSpec& spec, const TestFunction& phi, double k,
                                 FluxScheme scheme) {
    u.require_conformable(f, "entropy_residual data");
    u.require_conformable(phi.values, "entropy_residual test function");
    TruncationLevel level(k);

    const Grid& g = u.grid();
    const double hx = g.hx(), hy = g.hy(), cell = hx * hy;

    GridFunction v(g);
    for (std::size_t n = 0; n < v.values().size(); ++n)
        v.values()[n] = truncate(u.values()[n] - phi.values.values()[n], level);

    AssemblyContext ctx(spec, g);
    const double height = kernels::par::max_abs(f.values()) + 1.0;
    EdgeData ed = edge_data(ctx, FrozenState{u, height}, scheme);

    EntropyResidual r;
    const bool with_flux = !ed.flux_x.empty();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = -1; i < g.nx; ++i) {
            const double du = (at(u, i + 1, j) - at(u, i, j)) / hx;
            const double dv = (at(v, i + 1, j) - at(v, i, j)) / hx;
            const std::size_t e = ed.ex(i, j);
            r.diffusion += ed.mu_x[e] * du * dv * cell;
            if (with_flux) r.convection += ed.flux_x[e] * dv * cell;
        }
    }
    for (int j = -1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double du = (at(u, i, j + 1) - at(u, i, j)) / hy;
            const double dv = (at(v, i, j + 1) - at(v, i, j)) / hy;
            const std::size_t e = ed.ey(i, j);
            r.diffusion += ed.mu_y[e] * du * dv * cell;
            if (with_flux) r.convection += ed.flux_y[e] * dv * cell;
        }
    }
    r.zero_order = kernels::par::dot(u.values(), v.values()) * cell;
    r.data = kernels::par::dot(f.values(), v.values()) * cell;
    r.value = r.diffusion + r.zero_order - r.data - r.convection;
    return r;
}

ResidualReport residual_report(const std::string& instance, const GridFunction& u,
                               const GridFunction& f, const ProblemSpec& spec, FluxScheme scheme,
                               FormulationMode mode, const std::vector<double>& k_list) {
    ResidualReport report;
    report.instance = instance;
    report.mode = mode == FormulationMode::distributional ? "distributional" : "entropy";
    report.slack = slack_budget(u.grid(), norm_l2(f));

    std::vector<TestFunction> library = test_function_library(u.grid(), u, k_list);
    if (mode == FormulationMode::distributional) {
        for (const auto& tf : library) {
            ResidualRow row;
            row.check = "distributional";
            row.phi = tf.name;
            row.value = distributional_residual(u, f, spec, tf, scheme);
            row.threshold = report.slack * (1.0 + tf.sup() + tf.grad_sup());
            row.pass = row.value <= row.threshold;
            report.rows.push_back(row);
        }
    } else {
        library.push_back(make_test_function("u", u));
        for (const auto& tf : library) {
            for (double k : k_list) {
                ResidualRow row;
                row.check = "entropy";
                row.phi = tf.name;
                row.k = k;
                row.has_k = true;
                row.value = entropy_residual(u, f, spec, tf, k, scheme).value;
                row.threshold = report.slack;
                row.pass = row.value <= row.threshold;
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

std::string to_csv(const EstimateReport& report) {
    std::string out = "instance,inequality,k,lhs,rhs,slack,margin,pass\n";
    auto line = [&](const std::string& name, const std::string& k, double lhs, double rhs,
                    bool pass) {
        out += report.instance + "," + name + "," + k + "," + fmt(lhs) + "," + fmt(rhs) + "," +
               fmt(report.slack) + "," + fmt(rhs + report.slack - lhs) + "," +
               (pass ? "1" : "0") + "\n";
    };
    line("energy", "", report.lhs_energy, report.rhs_energy, report.energy_pass);
    for (const auto& r : report.rows) {
        line("tail", fmt(r.k), r.lhs_tail, r.rhs_tail, r.tail_pass);
        line("chebyshev", fmt(r.k), r.level_measure, r.chebyshev_bound, r.chebyshev_pass);
        line("truncated_energy", fmt(r.k), r.lhs_trunc, r.rhs_trunc, r.trunc_pass);
    }
    return out;
}

std::string to_csv(const ResidualReport& report) {
    std::string out = "instance,check,phi,k,value,threshold,pass\n";
    for (const auto& r : report.rows) {
        out += report.instance + "," + r.check + "," + r.phi + "," +
               (r.has_k ? fmt(r.k) : std::string()) + "," + fmt(r.value) + "," +
               fmt(r.threshold) + "," + (r.pass ? "1" : "0") + "\n";
    }
    return out;
}

nlohmann::json to_json(const EstimateReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"k", r.k},
                        {"tail", {{"lhs", r.lhs_tail}, {"rhs", r.rhs_tail}, {"pass", r.tail_pass}}},
                        {"chebyshev",
                         {{"measure", r.level_measure},
                          {"bound", r.chebyshev_bound},
                          {"pass", r.chebyshev_pass}}},
                        {"truncated_energy",
                         {{"lhs", r.lhs_trunc}, {"rhs", r.rhs_trunc}, {"pass", r.trunc_pass}}}});
    }
    return {{"instance", report.instance},
            {"slack", report.slack},
            {"f_l2", report.f_l2},
            {"energy",
             {{"lhs", report.lhs_energy}, {"rhs", report.rhs_energy}, {"pass", report.energy_pass}}},
            {"levels", rows},
            {"all_pass", report.all_pass()}};
}

nlohmann::json to_json(const ResidualReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row = {{"check", r.check},
                              {"phi", r.phi},
                              {"value", r.value},
                              {"threshold", r.threshold},
                              {"pass", r.pass}};
        if (r.has_k) row["k"] = r.k;
        rows.push_back(row);
    }
    return {{"instance", report.instance},
            {"mode", report.mode},
            {"slack", report.slack},
            {"rows", rows},
            {"all_pass", report.all_pass()}};
}

} // namespace dgel
