#include "dgel/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dgel::kernels {

namespace {

// Per-block partials shared by both flavours.  Keeping the block arithmetic in
// one place (and out of line) pins down the floating-point result: the serial
// and OpenMP paths run the exact same instruction sequence per block.
__attribute__((noinline)) double block_dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

__attribute__((noinline)) double block_sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

__attribute__((noinline)) double block_max_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::fabs(x[i]));
    return s;
}

__attribute__((noinline)) double row_dot(const Csr& m, const std::vector<double>& x, std::size_t r) {
    double s = 0.0;
    for (std::size_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) s += m.val[p] * x[m.col[p]];
    return s;
}

inline std::size_t block_count(std::size_t n) { return (n + reduction_block - 1) / reduction_block; }

inline std::size_t block_len(std::size_t n, std::size_t b) {
    return std::min(reduction_block, n - b * reduction_block);
}

} // namespace

namespace serial {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size());
    const std::size_t nb = block_count(x.size());
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b)
        s += block_dot(x.data() + b * reduction_block, y.data() + b * reduction_block,
                       block_len(x.size(), b));
    return s;
}

double sum_abs(const std::vector<double>& x) {
    const std::size_t nb = block_count(x.size());
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b)
        s += block_sum_abs(x.data() + b * reduction_block, block_len(x.size(), b));
    return s;
}

double max_abs(const std::vector<double>& x) {
    const std::size_t nb = block_count(x.size());
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b)
        s = std::max(s, block_max_abs(x.data() + b * reduction_block, block_len(x.size(), b)));
    return s;
}

void csr_matvec(const Csr& m, const std::vector<double>& x, std::vector<double>& out) {
    out.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = row_dot(m, x, r);
}

void axpby(double alpha, const std::vector<double>& x, double beta, const std::vector<double>& y,
           std::vector<double>& out) {
    assert(x.size() == y.size());
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + beta * y[i];
}

void hadamard(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& out) {
    assert(x.size() == y.size());
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
}

} // namespace serial

namespace par {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size());
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < long(nb); ++b)
        partial[b] = block_dot(x.data() + b * reduction_block, y.data() + b * reduction_block,
                               block_len(x.size(), b));
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s += partial[b];
    return s;
}

double sum_abs(const std::vector<double>& x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < long(nb); ++b)
        partial[b] = block_sum_abs(x.data() + b * reduction_block, block_len(x.size(), b));
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s += partial[b];
    return s;
}

double max_abs(const std::vector<double>& x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < long(nb); ++b)
        partial[b] = block_max_abs(x.data() + b * reduction_block, block_len(x.size(), b));
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s = std::max(s, partial[b]);
    return s;
}

void csr_matvec(const Csr& m, const std::vector<double>& x, std::vector<double>& out) {
    out.resize(m.rows());
#pragma omp parallel for schedule(static)
    for (long r = 0; r < long(m.rows()); ++r) out[r] = row_dot(m, x, r);
}

void axpby(double alpha, const std::vector<double>& x, double beta, const std::vector<double>& y,
           std::vector<double>& out) {
    assert(x.size() == y.size());
    out.resize(x.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(x.size()); ++i) out[i] = alpha * x[i] + beta * y[i];
}

void hadamard(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& out) {
    assert(x.size() == y.size());
    out.resize(x.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(x.size()); ++i) out[i] = x[i] * y[i];
}

} // namespace par

} // namespace dgel::kernels
