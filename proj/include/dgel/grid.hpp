#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dgel/errors.hpp"

namespace dgel {

/// Uniform tensor grid of interior nodes on (0,lx) x (0,ly).
/// Interior node (i,j) sits at ((i+1)*hx, (j+1)*hy); the boundary ring at
/// i = -1, nx and j = -1, ny carries the homogeneous Dirichlet value 0 and is
/// never stored.
struct Grid {
    int nx = 0, ny = 0;
    double lx = 1.0, ly = 1.0;

    Grid() = default;
    Grid(int nx, int ny, double lx = 1.0, double ly = 1.0);

    double hx() const { return lx / (nx + 1); }
    double hy() const { return ly / (ny + 1); }
    /// Coarsest mesh width, the h used in slack budgets.
    double h() const { return hx() > hy() ? hx() : hy(); }
    double x(int i) const { return (i + 1) * hx(); }
    double y(int j) const { return (j + 1) * hy(); }

    std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }
    std::size_t idx(int i, int j) const { return std::size_t(j) * nx + i; }

    bool operator==(const Grid&) const = default;
};

/// Nodal values over the interior of a Grid, row-major in j.
class GridFunction {
  public:
    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid_(g), v_(g.size(), 0.0) {}
    GridFunction(const Grid& g, std::vector<double> values);

    /// Samples f(x,y) at every interior node.
    static GridFunction sample(const Grid& g, const std::function<double(double, double)>& f);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(int i, int j) { return v_[grid_.idx(i, j)]; }
    double operator()(int i, int j) const { return v_[grid_.idx(i, j)]; }
    double& operator[](std::size_t k) { return v_[k]; }
    double operator[](std::size_t k) const { return v_[k]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    bool conformable(const GridFunction& other) const { return grid_ == other.grid_; }
    /// Throws DimensionMismatch unless both functions live on the same grid.
    void require_conformable(const GridFunction& other, const char* what) const;

  private:
    Grid grid_;
    std::vector<double> v_;
};

/// Bilinear interpolation of a coarse-grid function onto another grid over the
/// same rectangle, using the zero boundary ring of the coarse grid.
GridFunction prolongate(const GridFunction& coarse, const Grid& fine);

} // namespace dgel
