#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dgel {

/// Grid function or vector passed with a size that does not match its grid.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A structural assumption on the data (coefficient bounds, sign of b, ...)
/// failed at a sampled point.  The message names the assumption.
struct AssumptionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |phi(t)| exceeded the declared quadratic growth bound C*t^2.
struct GrowthAssumptionViolated : std::runtime_error {
    GrowthAssumptionViolated(double t, double norm, double bound)
        : std::runtime_error("flux growth bound violated: |phi(" + std::to_string(t) +
                             ")| = " + std::to_string(norm) + " > C*t^2 = " + std::to_string(bound)),
          t(t), phi_norm(norm), bound(bound) {}
    double t, phi_norm, bound;
};

/// Test function rejected: unbounded values or nonzero boundary trace.
struct InvalidTestFunction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Linear solve did not reach its residual target within the iteration
/// budget.  Carries the sup-norm residual history for diagnostics.
struct LinearSolverFailure : std::runtime_error {
    LinearSolverFailure(std::string msg, std::vector<double> history)
        : std::runtime_error(std::move(msg)), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// Malformed config file or expression source.
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Manufactured right-hand sides need symbolically differentiable data.
struct ManufacturedUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Convergence studies need at least three grid levels.
struct InsufficientLevels : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace dgel
