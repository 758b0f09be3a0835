#pragma once

#include <optional>
#include <string>

#include "hoadi/combine.hpp"
#include "hoadi/grid.hpp"
#include "hoadi/model.hpp"
#include "hoadi/smoothing.hpp"
#include "hoadi/stepper.hpp"

namespace hoadi {

// Everything a solve needs besides the mesh resolution.
struct SolveSetup {
    ModelParams params;
    OptionSpec spec;
    Domain domain;
    AdiParams adi;
    double dt_factor = 5.0;   // dt = dt_factor * delta^2
    bool smoothing = true;
    // Smoothing step: a fixed value when set (every grid then solves the same
    // mollified problem, as the convergence study requires), otherwise
    // smoothing_scale times the grid's own dx.
    std::optional<double> smoothing_h;
    double smoothing_scale = 1.0;
    int kernel_resolution = 4097;

    double resolve_smoothing_h(const UniformGrid& grid) const {
        return smoothing_h ? *smoothing_h : smoothing_scale * grid.dx();
    }
    int threads = 0;

    void validate() const;
};

// Payoff (smoothed unless disabled) with boundary data imposed at tau = 0.
GridField initial_condition(const SolveSetup& setup, const UniformGrid& grid);

// One full solve on the given grid and time partition.
GridField solve_on_grid(const SolveSetup& setup, const UniformGrid& grid, const TimeGrid& timegrid,
                        SolveStats* stats = nullptr, const StepTrace& trace = {});

struct FullSolve {
    UniformGrid grid;
    GridField field;
    SolveStats stats;
};

// Isotropic level-(n, n) solve with delta = 2^-n and dt = dt_factor*delta^2.
FullSolve full_grid_solve(const SolveSetup& setup, int n, const StepTrace& trace = {});

// Time-step rule for anisotropic combination sub-grids, expressed through
// the relative mesh scale delta fed into dt = dt_factor * delta^2.
enum class SubgridDtRule {
    MaxLevel,          // delta = 2^-max(l1, l2)
    SumLevel,          // delta = 2^-(l1 + l2 - exclusion_min)
    CombinationLevel,  // delta = 2^-n (the combination's target scale)
};

const char* subgrid_dt_rule_name(SubgridDtRule rule);
double subgrid_delta(SubgridDtRule rule, LevelIndex level, int n, int exclusion_min);

struct SparseSolve {
    UniformGrid target;
    GridField field;
    CombinationPlan plan;
    double seconds = 0.0;
    long nodes = 0;  // total nodes over retained sub-grids
};

// Combination-technique solve at level n, represented on the evaluation
// grid (level min(n-2, 8) per axis unless overridden).
SparseSolve sparse_solve(const SolveSetup& setup, int n, SubgridDtRule rule = SubgridDtRule::MaxLevel,
                         int exclusion_min = 3, std::optional<int> eval_level = std::nullopt);

// Price in currency units at market coordinates (S, sigma), read off the
// tau = T field by cubic interpolation.
double price_at(const SolveSetup& setup, const UniformGrid& grid, const GridField& field,
                double S, double sigma);

}  // namespace hoadi
