#pragma once

#include <array>
#include <functional>
#include <optional>

#include "dgel/expr.hpp"
#include "dgel/grid.hpp"

namespace dgel {

using ScalarField = std::function<double(double, double)>;
using FluxFunction = std::function<std::array<double, 2>(double)>;

/// Data for one boundary-value problem
///     -div( a(x) grad u / (1 + b(x)|u|)^theta ) + u = f - div(Phi(u)),  u = 0 on the boundary,
/// together with the structural bounds the estimates rely on:
///     0 < alpha <= a(x) <= beta,   0 <= b(x) <= B_bound,
/// and, when phi_growth_C is set, |Phi(t)| <= phi_growth_C * t^2.
///
/// Build specs through create(); it samples the bounds and rejects data that
/// violates them.  Instances are immutable after creation and safe to share
/// across concurrent solves.
struct ProblemSpec {
    double lx = 1.0, ly = 1.0;
    double alpha = 1.0, beta = 1.0;
    double B_bound = 0.0;
    double theta = 2.0;

    ScalarField a_field, b_field, f_data;
    FluxFunction phi;
    std::optional<double> phi_growth_C;

    // Expression sources, kept when the spec comes from a config file; the
    // manufactured right-hand side differentiates these.
    std::optional<Expr> a_expr, b_expr, f_expr, phi_x_expr, phi_y_expr;

    static ProblemSpec create(ProblemSpec raw);

    bool has_flux() const { return static_cast<bool>(phi); }
};

/// Evaluates Phi(t); enforces the quadratic growth bound per call when the
/// spec declares one (GrowthAssumptionViolated otherwise).
std::array<double, 2> phi_eval(const ProblemSpec& spec, double t);

/// Re-checks the (ab)-type coefficient bounds at every node of a grid.
/// Throws AssumptionViolation naming the failed assumption.
void check_coefficient_bounds(const ProblemSpec& spec, const Grid& grid);

/// Single-point bound check, shared by spec creation and assembly.
void check_bounds_at(const ProblemSpec& spec, double x, double y);

} // namespace dgel
