#include "dgel/system.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "dgel/errors.hpp"

namespace dgel {

std::vector<double> apply_operator(const SparseSystem& system, const std::vector<double>& v) {
    if (v.size() != system.rows())
        throw DimensionMismatch("apply_operator: vector length " + std::to_string(v.size()) +
                                " does not match system size " + std::to_string(system.rows()));
    std::vector<double> out;
    kernels::par::csr_matvec(system.matrix, v, out);
    return out;
}

void write_matrix_market(const SparseSystem& system, std::ostream& matrix_out,
                         std::ostream& rhs_out) {
    char buf[64];
    const auto& m = system.matrix;
    matrix_out << "%%MatrixMarket matrix coordinate real general\n";
    matrix_out << m.rows() << ' ' << m.rows() << ' ' << m.val.size() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
            std::snprintf(buf, sizeof buf, "%zu %d %.17g\n", r + 1, m.col[p] + 1, m.val[p]);
            matrix_out << buf;
        }
    }
    rhs_out << "%%MatrixMarket matrix array real general\n";
    rhs_out << system.rhs.size() << " 1\n";
    for (double v : system.rhs) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        rhs_out << buf;
    }
}

void write_matrix_market(const SparseSystem& system, const std::string& matrix_path,
                         const std::string& rhs_path) {
    std::ofstream m(matrix_path), r(rhs_path);
    if (!m || !r)
        throw std::runtime_error("cannot open matrix market output files");
    write_matrix_market(system, m, r);
}

} // namespace dgel
