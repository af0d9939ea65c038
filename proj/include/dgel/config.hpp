#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dgel/assemble.hpp"
#include "dgel/estimates.hpp"
#include "dgel/expr.hpp"
#include "dgel/problem.hpp"
#include "dgel/solver.hpp"

namespace dgel {

/// One fully described run: problem data, the grids to solve on, the checks
/// to run and the solver knobs.  Built from a JSON config; `echo` keeps the
/// normalized form (defaults filled in) for reproducible re-runs.
struct Scenario {
    std::string name;
    ProblemSpec spec;
    std::vector<std::pair<int, int>> grids;
    FormulationMode mode = FormulationMode::distributional;
    FluxScheme scheme = FluxScheme::upwind;
    std::vector<double> k_list;
    std::vector<int> n_list;
    SolverConfig solver;
    std::optional<Expr> u_exact;
    nlohmann::json echo;
};

/// Parses and validates a config object.  Unknown keys, missing required
/// fields, malformed expressions and assumption violations all throw
/// (ConfigParseError or AssumptionViolation).
Scenario load_scenario(const nlohmann::json& config);
Scenario load_scenario_file(const std::string& path);

} // namespace dgel
