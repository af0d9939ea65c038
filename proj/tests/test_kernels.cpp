#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dgel/assemble.hpp"
#include "dgel/config.hpp"
#include "dgel/kernels.hpp"
#include "dgel/solver.hpp"
#include "helpers.hpp"

using namespace dgel;
using nlohmann::json;
namespace k = dgel::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = pick(rng);
    return v;
}

// Plain left-to-right references, deliberately unblocked.
double naive_dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double naive_sum_abs(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
}

double naive_max_abs(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::fabs(v));
    return s;
}

// Sizes straddling the reduction block boundary plus a few block multiples.
const std::vector<std::size_t> sizes = {0, 1, 7, 1023, 1024, 1025, 2048, 4096 + 17, 100000};

} // namespace

TEST_CASE("blocked reductions agree with naive loops up to reassociation") {
    for (std::size_t n : sizes) {
        const std::vector<double> x = random_vec(n, 1000 + unsigned(n));
        const std::vector<double> y = random_vec(n, 2000 + unsigned(n));
        const double scale = 1.0 + naive_sum_abs(x);
        CHECK(std::fabs(k::serial::dot(x, y) - naive_dot(x, y)) <= 1e-13 * scale);
        CHECK(std::fabs(k::serial::sum_abs(x) - naive_sum_abs(x)) <= 1e-13 * scale);
        // max is a selection, not a sum: exact regardless of blocking.
        CHECK(k::serial::max_abs(x) == naive_max_abs(x));
    }
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
    for (std::size_t n : sizes) {
        const std::vector<double> x = random_vec(n, 10 + unsigned(n));
        const std::vector<double> y = random_vec(n, 20 + unsigned(n));
        CHECK(k::par::dot(x, y) == k::serial::dot(x, y));
        CHECK(k::par::sum_abs(x) == k::serial::sum_abs(x));
        CHECK(k::par::max_abs(x) == k::serial::max_abs(x));

        std::vector<double> a, b;
        k::serial::axpby(0.3, x, -1.7, y, a);
        k::par::axpby(0.3, x, -1.7, y, b);
        CHECK(a == b);
        k::serial::hadamard(x, y, a);
        k::par::hadamard(x, y, b);
        CHECK(a == b);
    }
}

TEST_CASE("matvec by hand and against the serial flavour") {
    k::Csr m;
    m.row_ptr = {0, 2, 3};
    m.col = {0, 1, 1};
    m.val = {2.0, -1.0, 3.0};
    std::vector<double> out;
    k::serial::csr_matvec(m, {4.0, 5.0}, out);
    CHECK(out == std::vector<double>{3.0, 15.0});
    k::par::csr_matvec(m, {4.0, 5.0}, out);
    CHECK(out == std::vector<double>{3.0, 15.0});

    const ProblemSpec spec = testing_helpers::variable_coefficient_spec();
    const Grid g(13, 11);
    const GridFunction f_n = GridFunction::sample(g, spec.f_data);
    const GridFunction w = GridFunction::sample(
        g, [](double x, double y) { return std::sin(5.0 * x) * y; });
    const SparseSystem sys = assemble(spec, g, FrozenState{w, 2.0}, f_n, FluxScheme::upwind);
    const std::vector<double> v = random_vec(sys.rows(), 77);
    std::vector<double> s_out, p_out;
    k::serial::csr_matvec(sys.matrix, v, s_out);
    k::par::csr_matvec(sys.matrix, v, p_out);
    CHECK(s_out == p_out);
}

TEST_CASE("axpby tolerates aliased output") {
    const std::vector<double> x = random_vec(3000, 5);
    const std::vector<double> y = random_vec(3000, 6);
    std::vector<double> expect;
    k::serial::axpby(2.0, x, 0.5, y, expect);

    std::vector<double> inplace = y;
    k::par::axpby(2.0, x, 0.5, inplace, inplace);  // out aliases y
    CHECK(inplace == expect);

    std::vector<double> expect2;
    k::serial::axpby(2.0, x, 0.5, x, expect2);
    std::vector<double> inplace2 = x;
    k::par::axpby(2.0, inplace2, 0.5, inplace2, inplace2);  // all three alias
    CHECK(inplace2 == expect2);
}

#ifdef _OPENMP
TEST_CASE("results do not depend on the OpenMP thread count") {
    const std::vector<double> x = random_vec(50000, 42);
    const std::vector<double> y = random_vec(50000, 43);
    const int saved = omp_get_max_threads();

    omp_set_num_threads(1);
    const double d1 = k::par::dot(x, y);
    const double s1 = k::par::sum_abs(x);
    const double m1 = k::par::max_abs(x);
    std::vector<double> a1;
    k::par::axpby(1.1, x, -0.9, y, a1);

    for (int threads : {2, 3, 4}) {
        omp_set_num_threads(threads);
        CHECK(k::par::dot(x, y) == d1);
        CHECK(k::par::sum_abs(x) == s1);
        CHECK(k::par::max_abs(x) == m1);
        std::vector<double> at;
        k::par::axpby(1.1, x, -0.9, y, at);
        CHECK(at == a1);
    }
    omp_set_num_threads(saved);
}
#endif

TEST_CASE("concurrent solves over one shared spec are independent and identical") {
    // Expression-backed spec: concurrent evaluation walks shared immutable
    // ASTs, concurrent solves share only const problem data.
    const json config = {{"name", "shared"},
                                   {"grid", {{"nx", 10}, {"ny", 10}}},
                                   {"alpha", 1.0},
                                   {"beta", 1.0},
                                   {"B", 1.0},
                                   {"a", "1"},
                                   {"b", "0.5+0.5*cos(2*x-y)"},
                                   {"f", "8*x*(1-x)*y*(1-y)"},
                                   {"phi", json::array({"t^2", "0"})},
                                   {"phi_growth_C", 1.0}};
    const Scenario sc = load_scenario(config);
    const Grid g(10, 10);
    const GridFunction f_n = GridFunction::sample(g, sc.spec.f_data);

    const SolveResult reference = picard_solve(sc.spec, g, f_n, sc.solver);
    REQUIRE(reference.converged);

    constexpr int workers = 4;
    std::vector<SolveResult> results(workers);
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                const GridFunction local_f = GridFunction::sample(g, sc.spec.f_data);
                results[t] = picard_solve(sc.spec, g, local_f, sc.solver);
            });
        for (std::thread& th : pool) th.join();
    }
    for (const SolveResult& res : results) {
        CHECK(res.converged);
        CHECK(res.iterations == reference.iterations);
        REQUIRE(res.u.size() == reference.u.size());
        for (std::size_t i = 0; i < res.u.size(); ++i) CHECK(res.u[i] == reference.u[i]);
    }
}
