#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dgel/config.hpp"
#include "dgel/estimates.hpp"
#include "dgel/solver.hpp"

namespace dgel {

/// Right-hand side that makes u_exact solve the operator exactly, built by
/// symbolic differentiation of the expression-backed data:
///   f = -div( a grad u / (1 + b|u|)^theta ) + u + div( Phi(u) ).
/// Throws ManufacturedUnsupported when the spec carries closures instead of
/// expressions, or when a participating expression is not differentiable
/// (min/max).
Expr manufactured_rhs(const ProblemSpec& spec, const Expr& u_exact);

struct LevelArtifacts {
    Grid grid;
    SolveResult solve;
    EstimateReport estimates;
    ResidualReport residuals;
    // L2 distance to the sampled u_exact; NaN when the scenario has none.
    double error_l2 = std::numeric_limits<double>::quiet_NaN();
};

struct RunArtifacts {
    std::string name;
    std::vector<LevelArtifacts> levels;
    SequenceResult sequence; // populated when the scenario lists n values
    bool ok = false;         // every solve converged and every check passed
};

/// Solves every grid of the scenario, verifies the estimate battery and the
/// residual battery on each, and runs the data-truncation sequence on the
/// finest grid when n values are configured.
RunArtifacts run_scenario(const Scenario& scenario);

/// Writes config echo, per-level reports, sequence table and summary.txt
/// under out_dir.  format is "csv" or "json"; the summary and the config
/// echo are always written.  Files appear atomically (tmp + rename) and
/// contain no timestamps, so identical runs produce identical bytes.
void write_artifacts(const RunArtifacts& artifacts, const nlohmann::json& echo,
                     const std::string& out_dir, const std::string& format);

struct ConvergenceStudy {
    std::vector<double> h;
    std::vector<double> error;
    std::vector<double> pair_orders; // per consecutive level pair
    double lsq_order = 0.0;          // least-squares slope of log(error) vs log(h)
};

/// Orders from a ladder of mesh widths and errors; needs at least three
/// levels (InsufficientLevels otherwise).
ConvergenceStudy convergence_study(const std::vector<double>& h,
                                   const std::vector<double>& errors);

/// Manufactured-solution ladder: replaces f by manufactured_rhs(u_exact),
/// solves every grid of the scenario and measures L2 errors against the
/// sampled u_exact.  The scenario must carry u_exact and at least three
/// grids.
ConvergenceStudy mms_study(const Scenario& scenario);

} // namespace dgel
