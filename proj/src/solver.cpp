#include "dgel/solver.hpp"

#include <cmath>
#include <limits>

#include "dgel/errors.hpp"
#include "dgel/kernels.hpp"
#include "dgel/quadrature.hpp"
#include "dgel/scalar_ops.hpp"

namespace dgel {

namespace k = kernels::par;

std::vector<double> linear_solve(const SparseSystem& system, const SolverConfig& cfg,
                                 const std::vector<double>* x0) {
    const std::size_t n = system.rows();
    if (x0 && x0->size() != n)
        throw DimensionMismatch("linear_solve: initial guess has the wrong length");

    const double target = cfg.linear_tol * (1.0 + k::max_abs(system.rhs));
    const int max_iter = cfg.linear_max_iter > 0 ? cfg.linear_max_iter : int(20 * n + 200);

    std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
    std::vector<double> r(n), z(n), p(n), ap(n);
    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) inv_diag[i] = 1.0 / system.diag[i];

    std::vector<double> history;
    history.reserve(64);

    int iter = 0;
    for (;;) {
        // (Re)start from the true residual; after a recurrence pass this
        // doubles as the verification of the residual contract.
        k::csr_matvec(system.matrix, x, ap);
        k::axpby(1.0, system.rhs, -1.0, ap, r);
        double rinf = k::max_abs(r);
        history.push_back(rinf);
        if (rinf <= target) return x;
        if (iter >= max_iter)
            throw LinearSolverFailure("linear solve exhausted " + std::to_string(iter) +
                                          " iterations (residual " + std::to_string(rinf) +
                                          ", target " + std::to_string(target) + ")",
                                      history);

        k::hadamard(inv_diag, r, z);
        p = z;
        double rz = k::dot(r, z);

        while (iter < max_iter) {
            ++iter;
            k::csr_matvec(system.matrix, p, ap);
            const double pap = k::dot(p, ap);
            if (!(pap > 0.0)) break;  // lost positivity to roundoff; restart
            const double a = rz / pap;
            k::axpby(1.0, x, a, p, x);
            k::axpby(1.0, r, -a, ap, r);
            rinf = k::max_abs(r);
            history.push_back(rinf);
            if (rinf <= target) break;  // verify against the true residual above
            k::hadamard(inv_diag, r, z);
            const double rz_next = k::dot(r, z);
            k::axpby(1.0, z, rz_next / rz, p, p);
            rz = rz_next;
        }
    }
}

SolveResult picard_solve(const ProblemSpec& spec, const Grid& grid, const GridFunction& f_n,
                         const SolverConfig& cfg, const GridFunction* initial_guess) {
    if (f_n.grid() != grid)
        throw DimensionMismatch("picard_solve: data lives on a different grid");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
        throw std::invalid_argument("picard_solve: damping must lie in (0,1]");
    if (initial_guess) f_n.require_conformable(*initial_guess, "picard_solve initial guess");

    AssemblyContext ctx(spec, grid);

    SolveResult res;
    res.f_inf = norm_linf(f_n);
    res.effective_tol = cfg.picard_tol * (1.0 + res.f_inf);
    const double M = res.f_inf + 1.0;

    GridFunction w = initial_guess ? *initial_guess : GridFunction(grid);
    double damping = cfg.damping;
    double prev_update = std::numeric_limits<double>::infinity();
    int rising = 0;

    SparseSystem sys = assemble(ctx, {w, M}, f_n, cfg.scheme);
    std::vector<double> tmp(grid.size());

    for (int m = 1; m <= cfg.picard_max_iter; ++m) {
        std::vector<double> u_hat;
        try {
            u_hat = linear_solve(sys, cfg, &w.values());
        } catch (const LinearSolverFailure& e) {
            res.u = w;
            res.iterations = m - 1;
            res.failure_reason = e.what();
            break;
        }

        GridFunction w_next(grid);
        k::axpby(1.0 - damping, w.values(), damping, u_hat, w_next.values());
        k::axpby(1.0, w_next.values(), -1.0, w.values(), tmp);
        const double update = k::max_abs(tmp);

        sys = assemble(ctx, {w_next, M}, f_n, cfg.scheme);
        k::csr_matvec(sys.matrix, w_next.values(), tmp);
        k::axpby(1.0, tmp, -1.0, sys.rhs, tmp);
        const double residual = k::max_abs(tmp);

        res.history.push_back({m, update, residual});
        w = std::move(w_next);
        res.iterations = m;

        if (residual <= res.effective_tol) {
            res.converged = true;
            res.u = w;
            break;
        }

        // A sup-norm update rising three times in a row signals an
        // oscillating (or diverging) fixed-point map; halve the damping.
        if (update > prev_update) {
            if (++rising >= 3) {
                damping *= 0.5;
                rising = 0;
            }
        } else {
            rising = 0;
        }
        prev_update = update;
    }

    if (!res.converged && res.failure_reason.empty()) {
        res.u = w;
        res.failure_reason = "picard iteration budget exhausted";
    }
    if (!res.history.empty()) res.final_residual = res.history.back().residual;
    res.u_inf = norm_linf(res.u);
    res.linf_bound_check = res.u_inf <= res.f_inf;
    res.final_damping = damping;
    return res;
}

SequenceResult approximation_sequence(const ProblemSpec& spec, const Grid& grid,
                                      const std::vector<double>& n_list,
                                      const SolverConfig& cfg) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (!(n_list[i] > 0.0))
            throw std::invalid_argument("approximation_sequence: truncation levels must be > 0");
        if (i > 0 && !(n_list[i] > n_list[i - 1]))
            throw std::invalid_argument(
                "approximation_sequence: truncation levels must be strictly increasing");
    }

    SequenceResult out;
    out.f = GridFunction::sample(grid, spec.f_data);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    const GridFunction* u_prev = nullptr;
    for (double n : n_list) {
        SequenceEntry e;
        e.n = n;
        GridFunction f_n = truncate(out.f, n);
        GridFunction delta(grid);
        kernels::par::axpby(1.0, f_n.values(), -1.0, out.f.values(), delta.values());
        e.f_delta_l2 = norm_l2(delta);
        // Warm-starting from the previous level keeps the sweep cheap and
        // does not change fixed points.
        e.solve = picard_solve(spec, grid, f_n, cfg, u_prev);
        if (u_prev) {
            kernels::par::axpby(1.0, e.solve.u.values(), -1.0, u_prev->values(), delta.values());
            e.u_delta_l2 = norm_l2(delta);
            e.grad_delta_l1 = w11_seminorm(GridFunction(grid, delta.values()));
        } else {
            e.u_delta_l2 = nan;
            e.grad_delta_l1 = nan;
        }
        out.entries.push_back(std::move(e));
        u_prev = &out.entries.back().solve.u;
    }
    return out;
}

} // namespace dgel
