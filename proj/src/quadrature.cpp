#include "dgel/quadrature.hpp"

#include <cmath>

#include "dgel/kernels.hpp"
#include "dgel/scalar_ops.hpp"

namespace dgel {

double norm_l1(const GridFunction& v) {
    return v.grid().hx() * v.grid().hy() * kernels::par::sum_abs(v.values());
}

double norm_l2(const GridFunction& v) {
    return std::sqrt(v.grid().hx() * v.grid().hy() * kernels::par::dot(v.values(), v.values()));
}

double norm_linf(const GridFunction& v) { return kernels::par::max_abs(v.values()); }

double w11_seminorm(const GridFunction& v) {
    const Grid& g = v.grid();
    const double hx = g.hx(), hy = g.hy();
    auto val = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) return 0.0;
        return v(i, j);
    };
    double s = 0.0;
    for (int j = -1; j < g.ny; ++j) {
        for (int i = -1; i < g.nx; ++i) {
            const double gx = (val(i + 1, j) - val(i, j)) / hx;
            const double gy = (val(i, j + 1) - val(i, j)) / hy;
            s += std::hypot(gx, gy);
        }
    }
    return s * hx * hy;
}

double grad_sq_edges(const GridFunction& v) {
    const Grid& g = v.grid();
    const double hx = g.hx(), hy = g.hy();
    auto val = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) return 0.0;
        return v(i, j);
    };
    double s = 0.0;
    // x-edges between lattice columns i and i+1, i in [-1, nx-1], plus the
    // edge into the right boundary; mirrored for y.
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i) {
            const double d = (val(i + 1, j) - val(i, j)) / hx;
            s += d * d;
        }
    for (int j = -1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = (val(i, j + 1) - val(i, j)) / hy;
            s += d * d;
        }
    return s * hx * hy;
}

double levelset_measure(const GridFunction& v, double k) {
    TruncationLevel level(k);  // validates k >= 0
    std::size_t count = 0;
    for (double s : v.values())
        if (std::fabs(s) >= level.k) ++count;
    return v.grid().hx() * v.grid().hy() * double(count);
}

} // namespace dgel
