#pragma once

// Small builders for the problem instances the tests revisit: a linear
// nondegenerate case, the quadratic-flux nonlinear case, and the
// exponential-flux case that only the entropy formulation admits.

#include <array>
#include <cmath>

#include "dgel/problem.hpp"

namespace testing_helpers {

inline dgel::ProblemSpec linear_spec() {
    dgel::ProblemSpec raw;
    raw.alpha = 1.0;
    raw.beta = 1.0;
    raw.B_bound = 0.0;
    raw.theta = 2.0;
    raw.a_field = [](double, double) { return 1.0; };
    raw.b_field = [](double, double) { return 0.0; };
    raw.f_data = [](double, double) { return 1.0; };
    return dgel::ProblemSpec::create(raw);
}

// a=1, b=1, theta=2, quadratic flux with declared growth constant, and a
// polynomial bump datum scaled by `amp`.
inline dgel::ProblemSpec quadratic_flux_spec(double amp = 4.0) {
    dgel::ProblemSpec raw;
    raw.alpha = 1.0;
    raw.beta = 1.0;
    raw.B_bound = 1.0;
    raw.theta = 2.0;
    raw.a_field = [](double, double) { return 1.0; };
    raw.b_field = [](double, double) { return 1.0; };
    raw.f_data = [amp](double x, double y) {
        return amp * 16.0 * x * (1.0 - x) * y * (1.0 - y);
    };
    raw.phi = [](double t) { return std::array<double, 2>{t * t, 0.0}; };
    raw.phi_growth_C = 1.0;
    return dgel::ProblemSpec::create(raw);
}

// Exponential flux: violates every quadratic growth bound, so no constant is
// declared and only the entropy checks apply.
inline dgel::ProblemSpec exponential_flux_spec(double amp = 2.0) {
    dgel::ProblemSpec raw;
    raw.alpha = 1.0;
    raw.beta = 1.0;
    raw.B_bound = 1.0;
    raw.theta = 2.0;
    raw.a_field = [](double, double) { return 1.0; };
    raw.b_field = [](double, double) { return 1.0; };
    raw.f_data = [amp](double x, double y) {
        return amp * 16.0 * x * (1.0 - x) * y * (1.0 - y);
    };
    raw.phi = [](double t) { return std::array<double, 2>{std::exp(t) - 1.0, 0.0}; };
    return dgel::ProblemSpec::create(raw);
}

// Variable coefficients within fixed bounds; exercises the harmonic mean and
// the bound checks without leaving the admissible class.
inline dgel::ProblemSpec variable_coefficient_spec() {
    dgel::ProblemSpec raw;
    raw.alpha = 0.5;
    raw.beta = 2.0;
    raw.B_bound = 1.5;
    raw.theta = 2.0;
    raw.a_field = [](double x, double y) { return 1.0 + 0.5 * std::sin(3.0 * x + y); };
    raw.b_field = [](double x, double y) { return 0.75 + 0.75 * std::cos(2.0 * x - y); };
    raw.f_data = [](double x, double y) {
        return 6.0 * x * (1.0 - x) * y * (1.0 - y) + 0.5;
    };
    raw.phi = [](double t) { return std::array<double, 2>{0.5 * t * t, -0.25 * t * t}; };
    raw.phi_growth_C = 1.0;
    return dgel::ProblemSpec::create(raw);
}

} // namespace testing_helpers
