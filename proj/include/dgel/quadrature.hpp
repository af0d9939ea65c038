#pragma once

#include "dgel/grid.hpp"

namespace dgel {

/// Discrete norms over interior nodes, node-centered midpoint rule with
/// weight hx*hy per node.
double norm_l1(const GridFunction& v);
double norm_l2(const GridFunction& v);
double norm_linf(const GridFunction& v);

/// int |grad v| with one-sided difference gradients on cells and the zero
/// boundary extension: cell (i,j), i in [-1,nx-1], j in [-1,ny-1], carries
/// gradient ((v(i+1,j)-v(i,j))/hx, (v(i,j+1)-v(i,j))/hy).
double w11_seminorm(const GridFunction& v);

/// Edge-quadrature version of int |grad v|^2: sum over all lattice edges
/// (boundary edges included, zero extension) of the squared difference
/// quotient, weight hx*hy per edge.  This is the gradient energy the
/// five-point scheme itself induces.
double grad_sq_edges(const GridFunction& v);

/// Lebesgue measure of {|v| >= k}: hx*hy times the node count.
double levelset_measure(const GridFunction& v, double k);

} // namespace dgel
