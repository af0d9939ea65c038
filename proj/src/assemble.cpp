#include "dgel/assemble.hpp"

#include <cmath>

#include "dgel/errors.hpp"
#include "dgel/scalar_ops.hpp"

namespace dgel {

AssemblyContext::AssemblyContext(const ProblemSpec& spec, const Grid& grid)
    : spec_(&spec), grid_(grid) {
    const std::size_t n = std::size_t(grid.nx + 2) * (grid.ny + 2);
    a_.resize(n);
    b_.resize(n);
    for (int j = -1; j <= grid.ny; ++j) {
        for (int i = -1; i <= grid.nx; ++i) {
            const double x = (i + 1) * grid.hx();
            const double y = (j + 1) * grid.hy();
            check_bounds_at(spec, x, y);
            a_[lattice(i, j)] = spec.a_field(x, y);
            b_[lattice(i, j)] = spec.b_field(x, y);
        }
    }
}

double edge_flux(double phiL, double phiR, double vL, double vR, FluxScheme scheme) {
    if (scheme == FluxScheme::central || vR == vL) return 0.5 * (phiL + phiR);
    // Donor value by the sign of the local secant of phi; identical to a
    // local Lax-Friedrichs flux with the secant modulus as wave speed.
    const double secant = (phiR - phiL) / (vR - vL);
    return secant >= 0.0 ? phiL : phiR;
}

EdgeData edge_data(const AssemblyContext& ctx, const FrozenState& frozen, FluxScheme scheme) {
    const Grid& g = ctx.grid();
    if (frozen.w.grid() != g)
        throw DimensionMismatch("edge_data: frozen state lives on a different grid");
    if (!(frozen.truncation_height >= 0.0))
        throw std::invalid_argument("edge_data: truncation height must be >= 0");

    const ProblemSpec& spec = ctx.spec();
    const int nx = g.nx, ny = g.ny;
    const int sx = nx + 2;
    const bool with_flux = spec.has_flux();
    const TruncationLevel level(frozen.truncation_height);

    auto li = [sx](int i, int j) { return std::size_t(j + 1) * sx + std::size_t(i + 1); };

    // Frozen nodal data on the lattice: v = T_M(w) with the zero boundary
    // ring, the diffusion factor c, and the two flux components at v.
    const std::size_t ln = std::size_t(sx) * (ny + 2);
    std::vector<double> v(ln, 0.0), c(ln), px, py;
    if (with_flux) {
        px.resize(ln);
        py.resize(ln);
    }
    for (int j = -1; j <= ny; ++j) {
        for (int i = -1; i <= nx; ++i) {
            const std::size_t p = li(i, j);
            const bool interior = i >= 0 && i < nx && j >= 0 && j < ny;
            if (interior) v[p] = truncate(frozen.w(i, j), level);
            c[p] = coefficient(ctx.a_at(i, j), ctx.b_at(i, j), v[p], spec.theta);
            if (with_flux) {
                const auto z = phi_eval(spec, v[p]);
                px[p] = z[0];
                py[p] = z[1];
            }
        }
    }

    auto harm = [](double cl, double cr) { return 2.0 * cl * cr / (cl + cr); };

    EdgeData e;
    e.grid = g;
    e.mu_x.resize(std::size_t(nx + 1) * ny);
    e.mu_y.resize(std::size_t(nx) * (ny + 1));
    if (with_flux) {
        e.flux_x.resize(e.mu_x.size());
        e.flux_y.resize(e.mu_y.size());
    }

#pragma omp parallel for schedule(static)
    for (long j = 0; j < ny; ++j) {
        for (int i = -1; i < nx; ++i) {
            const std::size_t p = li(i, int(j));
            const std::size_t q = e.ex(i, int(j));
            e.mu_x[q] = harm(c[p], c[p + 1]);
            if (with_flux) e.flux_x[q] = edge_flux(px[p], px[p + 1], v[p], v[p + 1], scheme);
        }
    }
#pragma omp parallel for schedule(static)
    for (long j = -1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t p = li(i, int(j));
            const std::size_t q = e.ey(i, int(j));
            e.mu_y[q] = harm(c[p], c[p + sx]);
            if (with_flux) e.flux_y[q] = edge_flux(py[p], py[p + sx], v[p], v[p + sx], scheme);
        }
    }
    return e;
}

SparseSystem assemble(const AssemblyContext& ctx, const FrozenState& frozen,
                      const GridFunction& f_n, FluxScheme scheme) {
    const Grid& g = ctx.grid();
    if (f_n.grid() != g)
        throw DimensionMismatch("assemble: right-hand side lives on a different grid");

    const EdgeData ed = edge_data(ctx, frozen, scheme);
    const int nx = g.nx, ny = g.ny;
    const double hx = g.hx(), hy = g.hy();
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    const bool with_flux = ctx.spec().has_flux();

    SparseSystem sys;
    sys.grid = g;
    sys.rhs.resize(g.size());
    sys.diag.resize(g.size());

    auto& m = sys.matrix;
    m.row_ptr.resize(g.size() + 1);
    m.row_ptr[0] = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t r = g.idx(i, j);
            m.row_ptr[r + 1] =
                m.row_ptr[r] + 1 + (i > 0) + (i < nx - 1) + (j > 0) + (j < ny - 1);
        }
    m.col.resize(m.row_ptr.back());
    m.val.resize(m.row_ptr.back());

#pragma omp parallel for schedule(static)
    for (long r = 0; r < long(g.size()); ++r) {
        const int i = int(r % nx), j = int(r / nx);

        const double mu_w = ed.mu_x[ed.ex(i - 1, j)];
        const double mu_e = ed.mu_x[ed.ex(i, j)];
        const double mu_s = ed.mu_y[ed.ey(i, j - 1)];
        const double mu_n = ed.mu_y[ed.ey(i, j)];

        std::size_t q = m.row_ptr[r];
        if (j > 0) { m.col[q] = int(r) - nx; m.val[q] = -mu_s * ihy2; ++q; }
        if (i > 0) { m.col[q] = int(r) - 1;  m.val[q] = -mu_w * ihx2; ++q; }
        const double d = 1.0 + (mu_w + mu_e) * ihx2 + (mu_s + mu_n) * ihy2;
        m.col[q] = int(r);
        m.val[q] = d;
        sys.diag[r] = d;
        ++q;
        if (i < nx - 1) { m.col[q] = int(r) + 1;  m.val[q] = -mu_e * ihx2; ++q; }
        if (j < ny - 1) { m.col[q] = int(r) + nx; m.val[q] = -mu_n * ihy2; ++q; }

        double rhs = f_n[std::size_t(r)];
        if (with_flux) {
            rhs -= (ed.flux_x[ed.ex(i, j)] - ed.flux_x[ed.ex(i - 1, j)]) / hx +
                   (ed.flux_y[ed.ey(i, j)] - ed.flux_y[ed.ey(i, j - 1)]) / hy;
        }
        sys.rhs[std::size_t(r)] = rhs;
    }
    return sys;
}

SparseSystem assemble(const ProblemSpec& spec, const Grid& grid, const FrozenState& frozen,
                      const GridFunction& f_n, FluxScheme scheme) {
    AssemblyContext ctx(spec, grid);
    return assemble(ctx, frozen, f_n, scheme);
}

} // namespace dgel
