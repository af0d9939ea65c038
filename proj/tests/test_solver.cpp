#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dgel/assemble.hpp"
#include "dgel/errors.hpp"
#include "dgel/quadrature.hpp"
#include "dgel/solver.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dgel;
using testing_helpers::linear_spec;
using testing_helpers::quadratic_flux_spec;
using testing_helpers::variable_coefficient_spec;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

} // namespace

TEST_CASE("conjugate gradients agrees with dense LU on small systems") {
    const ProblemSpec spec = variable_coefficient_spec();
    const Grid g(3, 3);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    GridFunction w(g);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = pick(rng);

    const double M = 2.0;
    for (FluxScheme scheme : {FluxScheme::upwind, FluxScheme::central}) {
        const SparseSystem sys = assemble(spec, g, FrozenState{w, M}, f_n, scheme);
        SolverConfig cfg;
        const std::vector<double> x = linear_solve(sys, cfg);
        const std::vector<double> ref =
            oracle::lu_solve(oracle::dense_assemble(spec, g, w, M, f_n, scheme));
        CHECK(sup_diff(x, ref) <= 1e-10);
    }
}

TEST_CASE("zero right-hand side solves to exactly zero") {
    const ProblemSpec spec = linear_spec();
    const Grid g(6, 5);
    const GridFunction zero(g);
    const SparseSystem sys = assemble(spec, g, FrozenState{zero, 1.0}, zero, FluxScheme::upwind);
    SolverConfig cfg;
    for (double v : linear_solve(sys, cfg)) CHECK(v == 0.0);
}

TEST_CASE("single-unknown system solves directly") {
    const ProblemSpec spec = linear_spec();
    const Grid g(1, 1);
    GridFunction f_n(g);
    f_n[0] = 10.0;
    const SparseSystem sys = assemble(spec, g, FrozenState{GridFunction(g), 11.0}, f_n,
                                      FluxScheme::upwind);
    SolverConfig cfg;
    const double d = sys.diag[0];
    const double x = linear_solve(sys, cfg)[0];
    CHECK(x == doctest::Approx(10.0 / d).epsilon(1e-14));
}

TEST_CASE("exhausted linear budget throws with the residual history attached") {
    const ProblemSpec spec = linear_spec();
    const Grid g(16, 16);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    const SparseSystem sys = assemble(spec, g, FrozenState{GridFunction(g), 2.0}, f_n,
                                      FluxScheme::upwind);
    SolverConfig cfg;
    cfg.linear_max_iter = 1;
    cfg.linear_tol = 1e-16;
    try {
        linear_solve(sys, cfg);
        FAIL("expected LinearSolverFailure");
    } catch (const LinearSolverFailure& e) {
        CHECK(!e.residual_history.empty());
        for (double r : e.residual_history) CHECK(r > 0.0);
    }
    CHECK_THROWS_AS(linear_solve(sys, cfg, nullptr), LinearSolverFailure);

    std::vector<double> bad(3, 0.0);
    cfg.linear_max_iter = 0;
    CHECK_THROWS_AS(linear_solve(sys, cfg, &bad), DimensionMismatch);
}

TEST_CASE("picard on zero data returns zero after one sweep") {
    const ProblemSpec spec = quadratic_flux_spec();
    const Grid g(8, 8);
    const GridFunction zero(g);
    SolverConfig cfg;
    const SolveResult res = picard_solve(spec, g, zero, cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.u_inf == 0.0);
    CHECK(res.f_inf == 0.0);
    CHECK(res.linf_bound_check);
    for (double v : res.u.values()) CHECK(v == 0.0);
}

TEST_CASE("linear problems converge in a single picard sweep") {
    const ProblemSpec spec = linear_spec();
    const Grid g(12, 12);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    SolverConfig cfg;
    const SolveResult res = picard_solve(spec, g, f_n, cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.final_residual <= res.effective_tol);
    CHECK(res.failure_reason.empty());
    CHECK(res.f_inf == 1.0);
    CHECK(res.effective_tol == cfg.picard_tol * 2.0);
}

TEST_CASE("picard fixed point matches dense damped newton") {
    // Small instances here; the full-resolution comparison runs in the
    // acceptance suite.
    const Grid g(6, 6);
    for (FluxScheme scheme : {FluxScheme::upwind, FluxScheme::central}) {
        const ProblemSpec spec = quadratic_flux_spec();
        const GridFunction f_n = GridFunction::sample(g, spec.f_data);
        SolverConfig cfg;
        cfg.scheme = scheme;
        cfg.picard_tol = 1e-12;
        const SolveResult res = picard_solve(spec, g, f_n, cfg);
        REQUIRE(res.converged);

        const std::vector<double> ref =
            oracle::dense_newton(spec, g, f_n, scheme, 1e-12 * (1.0 + res.f_inf));
        CHECK(sup_diff(res.u.values(), ref) <= 1e-8);
    }
}

TEST_CASE("converged state passes an independent fixed-point re-verification") {
    const ProblemSpec spec = variable_coefficient_spec();
    const Grid g(10, 9);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    SolverConfig cfg;
    const SolveResult res = picard_solve(spec, g, f_n, cfg);
    REQUIRE(res.converged);

    // Rebuild the frozen system at the reported solution and measure the
    // nonlinear residual from scratch.
    const double M = res.f_inf + 1.0;
    const SparseSystem sys = assemble(spec, g, FrozenState{res.u, M}, f_n, cfg.scheme);
    const std::vector<double> au = apply_operator(sys, res.u.values());
    double r = 0.0;
    for (std::size_t k = 0; k < au.size(); ++k)
        r = std::max(r, std::fabs(au[k] - sys.rhs[k]));
    CHECK(r <= res.effective_tol * (1.0 + 1e-12));
    CHECK(r == res.final_residual);
}

TEST_CASE("upwind solutions obey the sup-norm bound by the data") {
    const Grid g(8, 8);
    for (double amp : {1.0, 4.0, 12.0}) {
        const ProblemSpec spec = quadratic_flux_spec(amp);
        const GridFunction f_n = GridFunction::sample(g, spec.f_data);
        SolverConfig cfg;
        const SolveResult res = picard_solve(spec, g, f_n, cfg);
        REQUIRE(res.converged);
        CHECK(res.linf_bound_check);
        CHECK(norm_linf(res.u) <= norm_linf(f_n));
    }
}

TEST_CASE("the fixed point does not depend on the damping path") {
    const ProblemSpec spec = quadratic_flux_spec();
    const Grid g(8, 8);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);

    SolverConfig full, half;
    half.damping = 0.5;
    const SolveResult a = picard_solve(spec, g, f_n, full);
    const SolveResult b = picard_solve(spec, g, f_n, half);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(b.iterations >= a.iterations);  // the damped path takes smaller steps
    // The frozen matrix has unit diagonal dominance gap, so both converged
    // states sit within the sum of the two effective tolerances.
    CHECK(sup_diff(a.u.values(), b.u.values()) <=
          10.0 * (a.effective_tol + b.effective_tol));
}

TEST_CASE("repeated solves are bit-identical") {
    const ProblemSpec spec = variable_coefficient_spec();
    const Grid g(9, 7);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    SolverConfig cfg;
    const SolveResult a = picard_solve(spec, g, f_n, cfg);
    const SolveResult b = picard_solve(spec, g, f_n, cfg);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.iterations == b.iterations);
    for (std::size_t k = 0; k < a.u.size(); ++k) CHECK(a.u[k] == b.u[k]);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t k = 0; k < a.history.size(); ++k) {
        CHECK(a.history[k].update_norm == b.history[k].update_norm);
        CHECK(a.history[k].residual == b.history[k].residual);
    }
}

TEST_CASE("picard input validation") {
    const ProblemSpec spec = linear_spec();
    const Grid g(4, 4), other(5, 4);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    SolverConfig cfg;

    CHECK_THROWS_AS(picard_solve(spec, g, GridFunction(other), cfg), DimensionMismatch);

    GridFunction wrong_guess(other);
    CHECK_THROWS_AS(picard_solve(spec, g, f_n, cfg, &wrong_guess), DimensionMismatch);

    SolverConfig bad = cfg;
    bad.damping = 0.0;
    CHECK_THROWS_AS(picard_solve(spec, g, f_n, bad), std::invalid_argument);
    bad.damping = 1.5;
    CHECK_THROWS_AS(picard_solve(spec, g, f_n, bad), std::invalid_argument);
}

TEST_CASE("data truncated above its own sup changes nothing along the sequence") {
    const ProblemSpec spec = linear_spec();  // |f| = 1 everywhere
    const Grid g(8, 8);
    SolverConfig cfg;
    const SequenceResult seq = approximation_sequence(spec, g, {5.0, 10.0}, cfg);
    REQUIRE(seq.entries.size() == 2);
    for (const SequenceEntry& e : seq.entries) {
        CHECK(e.solve.converged);
        CHECK(e.f_delta_l2 == 0.0);  // T_n(f) = f for n above |f|_inf
    }
    CHECK(std::isnan(seq.entries[0].u_delta_l2));
    CHECK(std::isnan(seq.entries[0].grad_delta_l1));
    // Identical data, warm start: the second solve reproduces the first.
    CHECK(seq.entries[1].u_delta_l2 <= 1e-9);
    CHECK(seq.entries[1].grad_delta_l1 <= 1e-8);
}

TEST_CASE("approximation sequence tracks truncated data and drift") {
    const ProblemSpec spec = quadratic_flux_spec(12.0);  // |f|_inf = 12
    const Grid g(12, 12);
    SolverConfig cfg;
    const std::vector<double> n_list = {2.0, 4.0, 8.0, 16.0};
    const SequenceResult seq = approximation_sequence(spec, g, n_list, cfg);
    REQUIRE(seq.entries.size() == n_list.size());

    const GridFunction f_full = GridFunction::sample(g, spec.f_data);
    const double f_inf = norm_linf(f_full);
    CHECK(norm_linf(seq.f) == f_inf);

    for (std::size_t k = 0; k < seq.entries.size(); ++k) {
        const SequenceEntry& e = seq.entries[k];
        CHECK(e.n == n_list[k]);
        CHECK(e.solve.converged);
        // The solved data really was T_n(f); clamping makes the sup exact.
        CHECK(e.solve.f_inf == std::min(f_inf, e.n));
        if (k > 0) CHECK(e.f_delta_l2 <= seq.entries[k - 1].f_delta_l2);
    }
    // The last level dominates the data sup, so the truncation is inactive.
    CHECK(seq.entries.back().f_delta_l2 == 0.0);
}

TEST_CASE("sequence level lists must be positive and increasing") {
    const ProblemSpec spec = linear_spec();
    const Grid g(4, 4);
    SolverConfig cfg;
    CHECK_THROWS_AS(approximation_sequence(spec, g, {0.0, 1.0}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(approximation_sequence(spec, g, {-2.0}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(approximation_sequence(spec, g, {1.0, 1.0}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(approximation_sequence(spec, g, {4.0, 2.0}, cfg), std::invalid_argument);
}
