// Timing harness for the serial reference kernels against the OpenMP ones,
// plus assembly and a full linear solve at both thread counts.  The parallel
// reductions are blocked so both paths must agree bit for bit; the harness
// checks that while it times.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dgel/assemble.hpp"
#include "dgel/kernels.hpp"
#include "dgel/problem.hpp"
#include "dgel/solver.hpp"

using namespace dgel;

namespace {

template <class F>
double best_seconds(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

ProblemSpec bench_spec() {
    ProblemSpec raw;
    raw.alpha = 0.5;
    raw.beta = 2.0;
    raw.B_bound = 1.0;
    raw.theta = 2.0;
    raw.a_field = [](double x, double y) { return 1.0 + 0.5 * x * y; };
    raw.b_field = [](double, double) { return 1.0; };
    raw.f_data = [](double x, double y) {
        return 4.0 * x * (1.0 - x) * y * (1.0 - y);
    };
    return ProblemSpec::create(std::move(raw));
}

void row(const char* name, double serial, double parallel, bool match) {
    std::printf("  %-14s %10.3f ms %10.3f ms   x%-6.2f %s\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel, match ? "bitwise match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> sizes;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 2) {
            std::fprintf(stderr, "usage: %s [grid sizes...]\n", argv[0]);
            return 2;
        }
        sizes.push_back(n);
    }
    if (sizes.empty()) sizes = {64, 128, 256};
    const int reps = 5;
    const int threads = max_threads();
    std::printf("threads: %d\n", threads);

    const ProblemSpec spec = bench_spec();
    for (int n : sizes) {
        const Grid grid(n, n);
        const std::size_t m = grid.size();
        std::printf("grid %dx%d (%zu unknowns)\n", n, n, m);

        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(m), y(m);
        for (auto& v : x) v = dist(rng);
        for (auto& v : y) v = dist(rng);

        const GridFunction f = GridFunction::sample(grid, spec.f_data);
        const AssemblyContext ctx(spec, grid);
        const FrozenState frozen{f, kernels::par::max_abs(f.values()) + 1.0};
        const SparseSystem sys = assemble(ctx, frozen, f, FluxScheme::upwind);

        volatile double sink = 0.0;
        double s_dot = 0.0, p_dot = 0.0;
        const double t_dot_s = best_seconds(reps, [&] { s_dot = kernels::serial::dot(x, y); });
        const double t_dot_p = best_seconds(reps, [&] { p_dot = kernels::par::dot(x, y); });
        sink = sink + s_dot + p_dot;
        row("dot", t_dot_s, t_dot_p, s_dot == p_dot);

        double s_max = 0.0, p_max = 0.0;
        const double t_max_s = best_seconds(reps, [&] { s_max = kernels::serial::max_abs(x); });
        const double t_max_p = best_seconds(reps, [&] { p_max = kernels::par::max_abs(x); });
        sink = sink + s_max + p_max;
        row("max_abs", t_max_s, t_max_p, s_max == p_max);

        std::vector<double> mv_s(m), mv_p(m);
        const double t_mv_s =
            best_seconds(reps, [&] { kernels::serial::csr_matvec(sys.matrix, x, mv_s); });
        const double t_mv_p =
            best_seconds(reps, [&] { kernels::par::csr_matvec(sys.matrix, x, mv_p); });
        row("csr_matvec", t_mv_s, t_mv_p, mv_s == mv_p);

        SparseSystem asm_s, asm_p;
        set_threads(1);
        const double t_asm_s =
            best_seconds(reps, [&] { asm_s = assemble(ctx, frozen, f, FluxScheme::upwind); });
        set_threads(threads);
        const double t_asm_p =
            best_seconds(reps, [&] { asm_p = assemble(ctx, frozen, f, FluxScheme::upwind); });
        row("assemble", t_asm_s, t_asm_p,
            asm_s.matrix.val == asm_p.matrix.val && asm_s.rhs == asm_p.rhs);

        SolverConfig cfg;
        std::vector<double> cg_s, cg_p;
        set_threads(1);
        const double t_cg_s = best_seconds(reps, [&] { cg_s = linear_solve(sys, cfg); });
        set_threads(threads);
        const double t_cg_p = best_seconds(reps, [&] { cg_p = linear_solve(sys, cfg); });
        row("cg_solve", t_cg_s, t_cg_p, cg_s == cg_p);

        (void)sink;
    }
    return 0;
}
