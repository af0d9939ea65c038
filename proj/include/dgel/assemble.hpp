#pragma once

#include "dgel/grid.hpp"
#include "dgel/problem.hpp"
#include "dgel/system.hpp"

namespace dgel {

/// Discretization of the convective edge flux.  Upwinding picks the edge
/// donor by the sign of the local secant of Phi and is what the maximum
/// principle and the energy estimates rely on; central averaging is kept for
/// convergence-order studies.
enum class FluxScheme { upwind, central };

/// State the nonlinear terms are frozen at during one Picard step: the
/// coefficient and the flux see T_M(w), never w itself.
struct FrozenState {
    GridFunction w;
    double truncation_height;  // M, normally |f_n|_inf + 1
};

/// Per-grid data that does not depend on the frozen state: a and b sampled on
/// the node lattice including the boundary ring, bounds already checked.
/// Build once per solve and reuse across Picard iterations.
class AssemblyContext {
  public:
    AssemblyContext(const ProblemSpec& spec, const Grid& grid);

    const ProblemSpec& spec() const { return *spec_; }
    const Grid& grid() const { return grid_; }

    /// a(x), b(x) at lattice node (i,j), i in [-1, nx], j in [-1, ny].
    double a_at(int i, int j) const { return a_[lattice(i, j)]; }
    double b_at(int i, int j) const { return b_[lattice(i, j)]; }

  private:
    std::size_t lattice(int i, int j) const {
        return std::size_t(j + 1) * (grid_.nx + 2) + std::size_t(i + 1);
    }
    const ProblemSpec* spec_;
    Grid grid_;
    std::vector<double> a_, b_;
};

/// Edge quantities at one frozen state, the single source of truth for the
/// discretization: mu is the harmonic mean of a/(1+b|T_M w|)^theta at the two
/// adjacent lattice nodes, flux the edge value of Phi(T_M w) chosen by the
/// scheme.  Boundary edges use the zero ring.
///
/// x-edges join lattice nodes (i,j)-(i+1,j) for i in [-1,nx-1], j in [0,ny-1];
/// y-edges join (i,j)-(i,j+1) for i in [0,nx-1], j in [-1,ny-1].
struct EdgeData {
    Grid grid;
    std::vector<double> mu_x, mu_y;
    std::vector<double> flux_x, flux_y;  // empty when the spec has no flux

    std::size_t ex(int i, int j) const { return std::size_t(j) * (grid.nx + 1) + (i + 1); }
    std::size_t ey(int i, int j) const { return std::size_t(j + 1) * grid.nx + i; }
};

EdgeData edge_data(const AssemblyContext& ctx, const FrozenState& frozen, FluxScheme scheme);

/// Assembles the five-point flux-form system at a frozen state:
///   - edge diffusion weight = harmonic mean of a/(1+b|T_M w|)^theta at the
///     two adjacent lattice nodes,
///   - +1 on the diagonal from the zero-order term (unscaled form),
///   - rhs = f_n minus the discrete divergence of the edge flux Phi(T_M w),
///   - homogeneous Dirichlet values eliminated into the rhs.
/// Row r of the matrix is computed independently of all other rows, with a
/// fixed entry order, so the assembly parallelizes without changing a bit.
SparseSystem assemble(const AssemblyContext& ctx, const FrozenState& frozen,
                      const GridFunction& f_n, FluxScheme scheme);

/// Convenience overload building the context on the fly.
SparseSystem assemble(const ProblemSpec& spec, const Grid& grid, const FrozenState& frozen,
                      const GridFunction& f_n, FluxScheme scheme);

/// Numerical flux across one edge with donor values vL, vR and flux samples
/// phiL = phi(vL), phiR = phi(vR), for one component of Phi.
double edge_flux(double phiL, double phiR, double vL, double vR, FluxScheme scheme);

} // namespace dgel
