#include "dgel/testfuncs.hpp"

#include <cmath>

#include "dgel/errors.hpp"
#include "dgel/kernels.hpp"
#include "dgel/scalar_ops.hpp"

namespace dgel {

double TestFunction::sup() const { return kernels::par::max_abs(values.values()); }

double TestFunction::grad_sup() const {
    if (!has_gradient) return 0.0;
    const Grid& g = values.grid();
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i)
            s = std::max(s, std::fabs(dx((i + 1.5) * g.hx(), g.y(j))));
    for (int j = -1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            s = std::max(s, std::fabs(dy(g.x(i), (j + 1.5) * g.hy())));
    return s;
}

TestFunction make_test_function(const Grid& grid, const std::string& name,
                                const std::function<double(double, double)>& phi,
                                const std::function<double(double, double)>& dphi_dx,
                                const std::function<double(double, double)>& dphi_dy) {
    TestFunction tf;
    tf.name = name;
    tf.values = GridFunction::sample(grid, phi);
    for (double v : tf.values.values())
        if (!std::isfinite(v))
            throw InvalidTestFunction("test function '" + name + "' is not bounded on the grid");

    // Zero trace on the boundary lattice, up to roundoff of the closure
    // itself (sin(pi) is not exactly zero in floating point).
    const double tol = 1e-12 * (1.0 + tf.sup());
    auto check = [&](double x, double y) {
        if (std::fabs(phi(x, y)) > tol)
            throw InvalidTestFunction("test function '" + name + "' has nonzero boundary trace");
    };
    for (int i = 0; i <= grid.nx + 1; ++i) {
        check(i * grid.hx(), 0.0);
        check(i * grid.hx(), grid.ly);
    }
    for (int j = 0; j <= grid.ny + 1; ++j) {
        check(0.0, j * grid.hy());
        check(grid.lx, j * grid.hy());
    }

    if (dphi_dx && dphi_dy) {
        tf.has_gradient = true;
        tf.dx = dphi_dx;
        tf.dy = dphi_dy;
    }
    return tf;
}

TestFunction make_test_function(const std::string& name, GridFunction values) {
    for (double v : values.values())
        if (!std::isfinite(v))
            throw InvalidTestFunction("test function '" + name + "' is not bounded on the grid");
    TestFunction tf;
    tf.name = name;
    tf.values = std::move(values);
    return tf;
}

namespace {

// C^1 bump profile on [-1,1], zero outside.
double qb(double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? t * t : 0.0;
}

double qb_d(double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? -4.0 * s * t : 0.0;
}

} // namespace

std::vector<TestFunction> test_function_library(const Grid& grid, const GridFunction& u,
                                                const std::vector<double>& m_list) {
    const double lx = grid.lx, ly = grid.ly;
    std::vector<TestFunction> lib;

    lib.push_back(make_test_function(
        grid, "poly",
        [=](double x, double y) { return (x / lx) * (1 - x / lx) * (y / ly) * (1 - y / ly); },
        [=](double x, double y) { return (1 - 2 * x / lx) / lx * (y / ly) * (1 - y / ly); },
        [=](double x, double y) { return (x / lx) * (1 - x / lx) * (1 - 2 * y / ly) / ly; }));

    const double pi = 3.14159265358979323846;
    lib.push_back(make_test_function(
        grid, "sine",
        [=](double x, double y) { return std::sin(pi * x / lx) * std::sin(pi * y / ly); },
        [=](double x, double y) {
            return pi / lx * std::cos(pi * x / lx) * std::sin(pi * y / ly);
        },
        [=](double x, double y) {
            return pi / ly * std::sin(pi * x / lx) * std::cos(pi * y / ly);
        }));

    const double w = 0.25;
    for (double cx : {0.25, 0.75}) {
        for (double cy : {0.25, 0.75}) {
            char name[32];
            std::snprintf(name, sizeof name, "bump_%g_%g", cx, cy);
            lib.push_back(make_test_function(
                grid, name,
                [=](double x, double y) { return qb((x / lx - cx) / w) * qb((y / ly - cy) / w); },
                [=](double x, double y) {
                    return qb_d((x / lx - cx) / w) / (w * lx) * qb((y / ly - cy) / w);
                },
                [=](double x, double y) {
                    return qb((x / lx - cx) / w) * qb_d((y / ly - cy) / w) / (w * ly);
                }));
        }
    }

    for (double m : m_list) {
        char name[48];
        std::snprintf(name, sizeof name, "trunc_u_m=%g", m);
        lib.push_back(make_test_function(name, truncate(u, m)));
    }
    return lib;
}

} // namespace dgel
