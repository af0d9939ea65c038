#pragma once

#include <cstddef>
#include <vector>

namespace dgel::kernels {

/// Hot loops, provided in two bit-identical flavours: kernels::par uses
/// OpenMP, kernels::serial is the plain reference kept for testing and
/// benchmarking.  Reductions run over fixed-size blocks whose partial sums
/// are combined in block order, so the result does not depend on the number
/// of threads (or on which flavour ran).
inline constexpr std::size_t reduction_block = 1024;

struct Csr {
    // Fixed column order inside each row; matvec accumulates in that order.
    std::vector<std::size_t> row_ptr;
    std::vector<int> col;
    std::vector<double> val;
    std::size_t rows() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
};

namespace serial {
double dot(const std::vector<double>& x, const std::vector<double>& y);
double sum_abs(const std::vector<double>& x);
double max_abs(const std::vector<double>& x);
void csr_matvec(const Csr& m, const std::vector<double>& x, std::vector<double>& out);
/// out = alpha*x + beta*y
void axpby(double alpha, const std::vector<double>& x, double beta, const std::vector<double>& y,
           std::vector<double>& out);
void hadamard(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& out);
} // namespace serial

namespace par {
double dot(const std::vector<double>& x, const std::vector<double>& y);
double sum_abs(const std::vector<double>& x);
double max_abs(const std::vector<double>& x);
void csr_matvec(const Csr& m, const std::vector<double>& x, std::vector<double>& out);
void axpby(double alpha, const std::vector<double>& x, double beta, const std::vector<double>& y,
           std::vector<double>& out);
void hadamard(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& out);
} // namespace par

} // namespace dgel::kernels
