#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dgel/assemble.hpp"
#include "dgel/grid.hpp"
#include "dgel/problem.hpp"
#include "dgel/testfuncs.hpp"

namespace dgel {

// Mesh-dependent tolerance absorbing consistency error in the discrete
// analogues of the integral estimates: c_q * h * (1 + ||f|| + ||f||^2)
// with c_q = 10 and h the larger mesh width.
double slack_budget(const Grid& grid, double f_l2);

// One truncation level of the a-priori checks.
struct AprioriRow {
    double k = 0.0;
    // tail bound: sum of u_i^2 over {|u_i| >= k} vs same sum of f_i^2
    double lhs_tail = 0.0;
    double rhs_tail = 0.0;
    bool tail_pass = false;
    // level set measure vs the Chebyshev bound rhs_tail / k^2 (skipped at k = 0)
    double level_measure = 0.0;
    double chebyshev_bound = 0.0;
    bool chebyshev_pass = false;
    // truncated energy: alpha * sum_e (D T_k u)_e^2 vs ||f||_L1 * k * (1+Bk)^theta
    double lhs_trunc = 0.0;
    double rhs_trunc = 0.0;
    bool trunc_pass = false;
};

struct EstimateReport {
    std::string instance;
    double slack = 0.0;
    double f_l2 = 0.0;
    // weighted energy: alpha * sum_e (Du)_e^2 / (1 + B max(|u_L|,|u_R|))^theta
    double lhs_energy = 0.0;
    double rhs_energy = 0.0;
    bool energy_pass = false;
    std::vector<AprioriRow> rows;
    bool all_pass() const;
};

// Recomputes every a-priori inequality at the discrete solution u with data f.
EstimateReport verify_apriori(const std::string& instance, const GridFunction& u,
                              const GridFunction& f, const ProblemSpec& spec,
                              const std::vector<double>& k_list);

// Weak-form residual of u against a single test function: the discrete
// diffusion, zero-order, data and convective pairings must cancel. Test
// functions carrying an analytic gradient are paired at edge midpoints;
// grid-backed ones fall back to difference quotients.
double distributional_residual(const GridFunction& u, const GridFunction& f,
                               const ProblemSpec& spec, const TestFunction& phi,
                               FluxScheme scheme);

// Same pairing without the absolute value; additive in phi, which the
// property tests rely on.
double distributional_residual_signed(const GridFunction& u, const GridFunction& f,
                                      const ProblemSpec& spec, const TestFunction& phi,
                                      FluxScheme scheme);

struct EntropyResidual {
    double value = 0.0; // signed margin; nonpositive up to slack when u is admissible
    double diffusion = 0.0;
    double zero_order = 0.0;
    double data = 0.0;
    double convection = 0.0;
};

// Entropy margin with v = T_k(u - phi): diffusion + zero_order - data - convection.
EntropyResidual entropy_residual(const GridFunction& u, const GridFunction& f,
                                 const ProblemSpec& spec, const TestFunction& phi, double k,
                                 FluxScheme scheme);

struct ResidualRow {
    std::string check; // "distributional" or "entropy"
    std::string phi;
    double k = 0.0;  // entropy level; unused for distributional rows
    bool has_k = false;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

enum class FormulationMode { distributional, entropy };

struct ResidualReport {
    std::string instance;
    std::string mode;
    double slack = 0.0;
    std::vector<ResidualRow> rows;
    bool all_pass() const;
};

// Runs the residual battery for one solve over the built-in test function
// library (plus phi = u itself in entropy mode).
ResidualReport residual_report(const std::string& instance, const GridFunction& u,
                               const GridFunction& f, const ProblemSpec& spec, FluxScheme scheme,
                               FormulationMode mode, const std::vector<double>& k_list);

std::string to_csv(const EstimateReport& report);
std::string to_csv(const ResidualReport& report);
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const ResidualReport& report);

} // namespace dgel
