#pragma once

#include <optional>
#include <string>

#include "dgel/assemble.hpp"

namespace dgel {

struct SolverConfig {
    /// Nonlinear stop: sup-norm residual <= picard_tol * (1 + |f_n|_inf).
    double picard_tol = 1e-10;
    int picard_max_iter = 60000;
    /// Linear stop: sup-norm residual <= linear_tol * (1 + |rhs|_inf).
    double linear_tol = 1e-12;
    int linear_max_iter = 0;  // 0: choose from the system size
    /// Initial Picard damping in (0,1]; halved automatically whenever the
    /// update norm rises three iterations in a row.
    double damping = 1.0;
    FluxScheme scheme = FluxScheme::upwind;
};

/// Jacobi-preconditioned conjugate gradients on the assembled SPD system.
/// The residual contract is checked against a freshly computed b - A x, not
/// the recurrence; throws LinearSolverFailure (with the sup-norm residual
/// history) if the budget runs out.
std::vector<double> linear_solve(const SparseSystem& system, const SolverConfig& cfg,
                                 const std::vector<double>* x0 = nullptr);

struct PicardStep {
    int iter;
    double update_norm;  // sup norm of w_{m} - w_{m-1}
    double residual;     // sup norm of the full nonlinear residual at w_m
};

struct SolveResult {
    GridFunction u;
    bool converged = false;
    int iterations = 0;
    std::vector<PicardStep> history;
    double final_residual = 0.0;
    double effective_tol = 0.0;
    double f_inf = 0.0;            // |f_n|_inf of the data actually solved with
    double u_inf = 0.0;
    bool linf_bound_check = false; // |u|_inf <= |f_n|_inf, no slack
    double final_damping = 0.0;
    std::string failure_reason;    // empty when converged
};

/// Damped Picard iteration on the frozen problems
///   w_{m+1} = (1-rho) w_m + rho * A(w_m)^{-1} rhs(w_m),
/// with coefficient and flux frozen at T_M(w_m), M = |f_n|_inf + 1.
/// Non-convergence is reported in the result (history intact), not thrown,
/// so sweeps can continue past a bad entry.
SolveResult picard_solve(const ProblemSpec& spec, const Grid& grid, const GridFunction& f_n,
                         const SolverConfig& cfg,
                         const GridFunction* initial_guess = nullptr);

struct SequenceEntry {
    double n;                // data truncation level
    SolveResult solve;       // solve with f_n = T_n(f)
    double f_delta_l2;       // |f_n - f|_L2
    double u_delta_l2;       // |u_n - u_prev|_L2, NaN on the first entry
    double grad_delta_l1;    // |grad(u_n - u_prev)|_L1, NaN on the first entry
};

struct SequenceResult {
    GridFunction f;          // untruncated data on the grid
    std::vector<SequenceEntry> entries;
};

/// Solves with the truncated data T_n(f) for each n, tracking the distance
/// to the untruncated data and the drift between consecutive solutions.
SequenceResult approximation_sequence(const ProblemSpec& spec, const Grid& grid,
                                      const std::vector<double>& n_list, const SolverConfig& cfg);

} // namespace dgel
