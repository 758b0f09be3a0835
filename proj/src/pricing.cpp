#include "hoadi/pricing.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hoadi {

void SolveSetup::validate() const {
    params.validate();
    spec.validate();
    domain.validate();
    adi.validate();
    if (!(dt_factor > 0.0)) throw std::invalid_argument("SolveSetup: dt_factor must be > 0");
    if (!(smoothing_scale > 0.0)) throw std::invalid_argument("SolveSetup: smoothing_scale must be > 0");
    if (smoothing_h && !(*smoothing_h > 0.0))
        throw std::invalid_argument("SolveSetup: smoothing_h must be > 0");
}

GridField initial_condition(const SolveSetup& setup, const UniformGrid& grid) {
    GridField u0(grid);
    if (setup.smoothing) {
        const SmoothingKernel& kernel = shared_kernel(setup.kernel_resolution);
        u0 = smooth_initial(kernel, grid, setup.resolve_smoothing_h(grid)).field;
    } else {
        for (int j = 0; j < grid.n(); ++j) {
            double* row = u0.row(j);
            for (int i = 0; i < grid.m(); ++i) row[i] = payoff(grid.x(i));
        }
    }
    SvPdeProblem problem(setup.params);
    extrapolate_y_boundary(u0);
    const DirichletX d = dirichlet_x(0.0, grid, problem);
    for (int j = 0; j < grid.n(); ++j) {
        u0.at(0, j) = d.left;
        u0.at(grid.m() - 1, j) = d.right;
    }
    return u0;
}

GridField solve_on_grid(const SolveSetup& setup, const UniformGrid& grid, const TimeGrid& timegrid,
                        SolveStats* stats, const StepTrace& trace) {
    setup.validate();
    SvPdeProblem problem(setup.params);
    GridField u0 = initial_condition(setup, grid);
    return solve_to_maturity(grid, problem, setup.adi, timegrid, std::move(u0), setup.threads,
                             stats, trace);
}

FullSolve full_grid_solve(const SolveSetup& setup, int n, const StepTrace& trace) {
    const UniformGrid grid(setup.domain, LevelIndex{n, n});
    const TimeGrid tg = timegrid_for(std::pow(2.0, -n), setup.domain.T, setup.dt_factor);
    SolveStats stats;
    GridField field = solve_on_grid(setup, grid, tg, &stats, trace);
    return {grid, std::move(field), stats};
}

const char* subgrid_dt_rule_name(SubgridDtRule rule) {
    switch (rule) {
        case SubgridDtRule::MaxLevel: return "max";
        case SubgridDtRule::SumLevel: return "sum";
        case SubgridDtRule::CombinationLevel: return "level";
    }
    return "?";
}

double subgrid_delta(SubgridDtRule rule, LevelIndex level, int n, int exclusion_min) {
    switch (rule) {
        case SubgridDtRule::MaxLevel:
            return std::pow(2.0, -level.max());
        case SubgridDtRule::SumLevel:
            return std::pow(2.0, -(level.sum() - exclusion_min));
        case SubgridDtRule::CombinationLevel:
            return std::pow(2.0, -n);
    }
    throw std::invalid_argument("subgrid_delta: unknown rule");
}

SparseSolve sparse_solve(const SolveSetup& setup, int n, SubgridDtRule rule, int exclusion_min,
                         std::optional<int> eval_level) {
    setup.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const CombinationPlan plan = make_plan(n, exclusion_min);
    const int target_level = eval_level.value_or(std::min(n - 2, 8));
    const UniformGrid target(setup.domain, LevelIndex{target_level, target_level});

    // Sub-solves run concurrently; each one is given a single thread so the
    // plan-level parallel map owns the budget.
    SolveSetup sub_setup = setup;
    sub_setup.threads = 1;
    auto solve_level = [&](LevelIndex level) {
        const UniformGrid grid(setup.domain, level);
        const double delta = subgrid_delta(rule, level, n, exclusion_min);
        const TimeGrid tg = timegrid_for(delta, setup.domain.T, setup.dt_factor);
        return solve_on_grid(sub_setup, grid, tg);
    };
    GridField combined = combine(plan, solve_level, target, setup.threads);
    SparseSolve out{target, std::move(combined), plan, 0.0, plan.total_nodes(setup.domain)};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

double price_at(const SolveSetup& setup, const UniformGrid& grid, const GridField& field,
                double S, double sigma) {
    const TransformedPoint pt = transform(S, sigma, 0.0, setup.spec, setup.params);
    if (pt.x < grid.domain().L1 || pt.x > grid.domain().K1 || pt.y < grid.domain().L2 ||
        pt.y > grid.domain().K2)
        throw std::invalid_argument("price_at: (S, sigma) maps outside the computational domain");
    const double u = interpolate_at(grid, field, pt.x, pt.y);
    return untransform_price(u, pt.tau, setup.spec, setup.params);
}

}  // namespace hoadi
