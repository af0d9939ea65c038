#include "dgel/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dgel {

Grid::Grid(int nx, int ny, double lx, double ly) : nx(nx), ny(ny), lx(lx), ly(ly) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("grid needs at least one interior node per direction");
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("grid domain lengths must be positive");
}

GridFunction::GridFunction(const Grid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
    if (v_.size() != g.size())
        throw DimensionMismatch("grid function has " + std::to_string(v_.size()) +
                                " values for a grid of size " + std::to_string(g.size()));
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double, double)>& f) {
    GridFunction out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = f(g.x(i), g.y(j));
    return out;
}

void GridFunction::require_conformable(const GridFunction& other, const char* what) const {
    if (!conformable(other))
        throw DimensionMismatch(std::string(what) + ": grid functions live on different grids");
}

GridFunction prolongate(const GridFunction& coarse, const Grid& fine) {
    const Grid& cg = coarse.grid();
    if (cg.lx != fine.lx || cg.ly != fine.ly)
        throw DimensionMismatch("prolongate: grids cover different rectangles");

    // Value on the coarse lattice extended by the zero boundary ring.
    auto cval = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= cg.nx || j >= cg.ny) return 0.0;
        return coarse(i, j);
    };

    const double hxc = cg.hx(), hyc = cg.hy();
    GridFunction out(fine);
    for (int j = 0; j < fine.ny; ++j) {
        for (int i = 0; i < fine.nx; ++i) {
            const double x = fine.x(i), y = fine.y(j);
            // Lattice cell of the extended coarse grid containing (x,y).
            int ic = std::min(int(std::floor(x / hxc)), cg.nx);
            int jc = std::min(int(std::floor(y / hyc)), cg.ny);
            const double tx = x / hxc - ic;
            const double ty = y / hyc - jc;
            // Shift to interior indexing: lattice point p corresponds to node p-1.
            const int i0 = ic - 1, j0 = jc - 1;
            out(i, j) = (1 - tx) * (1 - ty) * cval(i0, j0) + tx * (1 - ty) * cval(i0 + 1, j0) +
                        (1 - tx) * ty * cval(i0, j0 + 1) + tx * ty * cval(i0 + 1, j0 + 1);
        }
    }
    return out;
}

} // namespace dgel
