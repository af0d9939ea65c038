#pragma once

#include <iosfwd>
#include <string>

#include "dgel/grid.hpp"
#include "dgel/kernels.hpp"

namespace dgel {

/// Assembled linear system A u = rhs for one frozen state.  A couples the
/// five-point diffusion stencil with the +u identity term; the convective
/// flux divergence sits entirely in rhs, so A is symmetric positive definite
/// and strictly diagonally dominant (an M-matrix) for every frozen state.
struct SparseSystem {
    Grid grid;
    kernels::Csr matrix;       // per row: columns in increasing order (S, W, diag, E, N)
    std::vector<double> rhs;
    std::vector<double> diag;  // diagonal copy, used by the Jacobi preconditioner

    std::size_t rows() const { return matrix.rows(); }
};

/// matrix * v; linear in v.  Throws DimensionMismatch on wrong sizes.
std::vector<double> apply_operator(const SparseSystem& system, const std::vector<double>& v);

/// Debug dump in Matrix Market form: coordinate format for the matrix,
/// array format for the right-hand side.  Entry order is deterministic
/// (row-major, columns increasing inside a row).
void write_matrix_market(const SparseSystem& system, std::ostream& matrix_out,
                         std::ostream& rhs_out);
void write_matrix_market(const SparseSystem& system, const std::string& matrix_path,
                         const std::string& rhs_path);

} // namespace dgel
