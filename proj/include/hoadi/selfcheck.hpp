#pragma once

#include <vector>

#include "hoadi/banded.hpp"
#include "hoadi/pricing.hpp"

namespace hoadi {

// Residuals of a discretisation against a manufactured solution over a
// sequence of dyadic refinements, plus the least-squares slope of
// log2(residual) against log2(delta).
struct OrderReport {
    std::vector<double> deltas;
    std::vector<double> residuals;
    double slope = 0.0;
};

double least_squares_slope(const std::vector<double>& deltas, const std::vector<double>& residuals);

// Compact-operator consistency on u(x) = sin x (rows) and u(y) = cos y
// (columns) with the coefficient functions of the default model; the
// manufactured right-hand side g solves the 1-D equation exactly.
OrderReport compact_x_order(int refinements = 4);
OrderReport compact_y_order(int refinements = 4);

// Wide-stencil consistency of the explicit split operator on a smooth
// 2-D manufactured field with the mixed term active. `core_only` restricts
// the max to nodes whose stencil needs no ghost extrapolation.
OrderReport explicit_f_order(int refinements = 4, bool core_only = true);

// Self-convergence temporal order at a fixed spatial level: solve the
// smoothed problem with dt, dt/2, ..., compare successive solutions over the
// error region. Returns the observed orders (halvings - 1 of them).
std::vector<double> temporal_order(const SolveSetup& setup, int level, double horizon,
                                   int base_steps, int halvings);

// Random diagonally dominant systems solved by both the tridiagonal kernels
// and dense Gaussian elimination; returns the largest relative mismatch.
double tridiagonal_vs_dense_max_error(int systems, int max_n, unsigned seed = 20240815u);

// Dense partial-pivot solve used as the oracle above (exposed for tests).
std::vector<double> dense_solve(const TridiagonalMatrix& m, std::vector<double> rhs);

}  // namespace hoadi
