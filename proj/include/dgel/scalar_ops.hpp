#pragma once

#include <cmath>
#include <stdexcept>

#include "dgel/grid.hpp"

namespace dgel {

/// Validated nonnegative truncation height.
struct TruncationLevel {
    double k;
    explicit TruncationLevel(double k) : k(k) {
        if (!(k >= 0.0))
            throw std::invalid_argument("truncation level must be >= 0");
    }
};

/// T_k(s) = max(-k, min(s, k)).
inline double truncate(double s, TruncationLevel level) {
    const double k = level.k;
    return s > k ? k : (s < -k ? -k : s);
}

inline double truncate(double s, double k) { return truncate(s, TruncationLevel(k)); }

inline GridFunction truncate(const GridFunction& v, double k) {
    TruncationLevel level(k);
    GridFunction out = v;
    for (double& s : out.values()) s = truncate(s, level);
    return out;
}

/// Piecewise-linear switch used in the level-set estimates: 0 on [0,k],
/// linear ramp of slope i on (k, k+1/i], 1 beyond, extended oddly.
inline double psi(double s, double i, double k) {
    if (!(i > 0.0)) throw std::invalid_argument("psi: ramp slope i must be > 0");
    if (!(k >= 0.0)) throw std::invalid_argument("psi: level k must be >= 0");
    if (s < 0.0) return -psi(-s, i, k);
    if (s <= k) return 0.0;
    if (s >= k + 1.0 / i) return 1.0;
    return i * (s - k);
}

/// Diffusion factor a / (1 + b*|u|)^theta evaluated at one node.
inline double coefficient(double a_val, double b_val, double u_val, double theta) {
    const double base = 1.0 + b_val * std::fabs(u_val);
    if (theta == 2.0) return a_val / (base * base);  // dominant case, keep pow() off the hot path
    if (theta == 0.0) return a_val;
    if (theta == 1.0) return a_val / base;
    return a_val / std::pow(base, theta);
}

} // namespace dgel
