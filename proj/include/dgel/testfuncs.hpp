#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgel/grid.hpp"

namespace dgel {

/// Admissible test function for the weak-form residuals: bounded, zero
/// boundary trace.  When analytic partials are attached the residual
/// quadrature samples them at edge midpoints; otherwise it falls back to the
/// scheme's own difference quotients of the nodal values.
struct TestFunction {
    std::string name;
    GridFunction values;
    bool has_gradient = false;
    std::function<double(double, double)> dx, dy;

    double sup() const;
    double grad_sup() const;  // sup over edge midpoints; 0 without gradient data
};

/// Samples phi on the grid and verifies admissibility: finite values and a
/// zero trace on the boundary lattice.  Throws InvalidTestFunction.
TestFunction make_test_function(const Grid& grid, const std::string& name,
                                const std::function<double(double, double)>& phi,
                                const std::function<double(double, double)>& dphi_dx = nullptr,
                                const std::function<double(double, double)>& dphi_dy = nullptr);

/// Wraps nodal data (zero boundary ring implied); no analytic gradient.
TestFunction make_test_function(const std::string& name, GridFunction values);

/// The fixed library used by the reports: the product polynomial, the first
/// sine mode, four tensor bumps at quarter offsets, and T_m(u) for each m.
std::vector<TestFunction> test_function_library(const Grid& grid, const GridFunction& u,
                                                const std::vector<double>& m_list);

} // namespace dgel
