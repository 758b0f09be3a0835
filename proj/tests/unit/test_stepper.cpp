#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "hoadi/pricing.hpp"
#include "hoadi/selfcheck.hpp"
#include "hoadi/stepper.hpp"
#include "test_problems.hpp"

using namespace hoadi;
using hoadi::testing::ZeroProblem;

namespace {
Domain paper_domain() { return Domain{-5.0, 1.5, 0.05, 2.5, 1.0}; }

GridField payoff_state(const UniformGrid& grid, const PdeProblem& problem) {
    GridField u(grid);
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.m(); ++i) u.at(i, j) = payoff(grid.x(i));
    extrapolate_y_boundary(u);
    const DirichletX d = dirichlet_x(0.0, grid, problem);
    for (int j = 0; j < grid.n(); ++j) {
        u.at(0, j) = d.left;
        u.at(grid.m() - 1, j) = d.right;
    }
    return u;
}
}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("adi parameter validation") {
    AdiParams ok;
    CHECK_NOTHROW(ok.validate());
    AdiParams bad_phi{0.0, 0.5};
    CHECK_THROWS_AS(bad_phi.validate(), std::invalid_argument);
    AdiParams bad_psi{0.5, 0.4};
    CHECK_THROWS_AS(bad_psi.validate(), std::invalid_argument);
}

TEST_CASE("zero operators fix every stage exactly") {
    const UniformGrid grid(paper_domain(), LevelIndex{3, 3});
    const ZeroProblem problem(paper_domain().L1);
    const GridField u0 = payoff_state(grid, problem);
    const PreparedSolver solver(grid, problem, AdiParams{}, 0.05);
    const GridField u1 = solver.step(u0, 0.0);
    CHECK(u1.values() == u0.values());  // bitwise fixed point
}

TEST_CASE("prepare is deterministic and pivots stay regular") {
    const UniformGrid grid(paper_domain(), LevelIndex{4, 4});
    const SvPdeProblem problem((ModelParams()));
    const double dt = 5.0 * std::pow(2.0, -8);
    const PreparedSolver a(grid, problem, AdiParams{}, dt);
    const PreparedSolver b(grid, problem, AdiParams{}, dt);
    CHECK_FALSE(a.used_pivot_fallback());
    CHECK(a.factor_sets() == 2);
    REQUIRE(a.x_factors().size() == b.x_factors().size());
    for (size_t k = 0; k < a.x_factors().size(); ++k) {
        CHECK(a.x_factors()[k].multipliers() == b.x_factors()[k].multipliers());
        CHECK(a.x_factors()[k].reciprocal_pivots() == b.x_factors()[k].reciprocal_pivots());
    }
    CHECK(a.y_factor().reciprocal_pivots() == b.y_factor().reciprocal_pivots());

    const PreparedSolver c(grid, problem, AdiParams{}, dt * 0.5);
    CHECK(c.x_factors()[0].reciprocal_pivots() != a.x_factors()[0].reciprocal_pivots());
}

TEST_CASE("factorization counts: two per prepare, two more for a short final step") {
    SolveSetup setup;
    setup.smoothing = false;
    const UniformGrid grid(setup.domain, LevelIndex{3, 3});
    const SvPdeProblem problem(setup.params);
    const GridField u0 = payoff_state(grid, problem);

    TimeGrid exact;  // 4 equal steps, no refactor
    exact.steps = 4;
    exact.dt = 0.25;
    exact.last_dt = 0.25;
    SolveStats stats;
    solve_to_maturity(grid, problem, AdiParams{}, exact, u0, 1, &stats);
    CHECK(stats.steps == 4);
    CHECK(stats.factor_sets == 2);

    const TimeGrid shortened = timegrid_for(std::pow(2.0, -4), 1.0, 5.0);  // 52 steps, short last
    REQUIRE(shortened.has_short_final_step());
    solve_to_maturity(grid, problem, AdiParams{}, shortened, u0, 1, &stats);
    CHECK(stats.steps == 52);
    CHECK(stats.factor_sets == 4);
}

TEST_CASE("P = 0 returns the initial data") {
    SolveSetup setup;
    const UniformGrid grid(setup.domain, LevelIndex{3, 3});
    const SvPdeProblem problem(setup.params);
    const GridField u0 = payoff_state(grid, problem);
    TimeGrid none;
    const GridField out = solve_to_maturity(grid, problem, AdiParams{}, none, u0, 1);
    CHECK(out.values() == u0.values());
}

TEST_CASE("stepped field carries Dirichlet data at the new time") {
    SolveSetup setup;
    const UniformGrid grid(setup.domain, LevelIndex{4, 4});
    const SvPdeProblem problem(setup.params);
    const PreparedSolver solver(grid, problem, AdiParams{}, 0.01);
    const GridField u1 = solver.step(payoff_state(grid, problem), 0.0);
    const double expect = 1.0 - std::exp(setup.params.r * 0.01 + setup.domain.L1);
    for (int j = 0; j < grid.n(); ++j) {
        CHECK(u1.at(0, j) == doctest::Approx(expect).epsilon(1e-15));
        CHECK(u1.at(grid.m() - 1, j) == 0.0);
    }
}

TEST_CASE("solution stays bounded by the initial and boundary data") {
    SolveSetup setup;  // experiment parameters
    const FullSolve solved = full_grid_solve(setup, 4);
    double max_val = 0.0;
    for (double v : solved.field.values()) max_val = std::max(max_val, std::abs(v));
    CHECK(max_val <= 1.0 + 1e-6);
    CHECK(solved.stats.steps == 52);
}

TEST_CASE("temporal self-convergence is second order (small fixture)") {
    SolveSetup setup;
    setup.threads = 2;
    const auto orders = temporal_order(setup, 5, 0.128, 16, 3);
    REQUIRE(orders.size() == 2);
    for (double p : orders) {
        CHECK(p > 1.5);
        CHECK(p < 2.6);
    }
}

TEST_CASE("instability is reported with the failing stage") {
    SolveSetup setup;
    const UniformGrid grid(setup.domain, LevelIndex{4, 4});
    const SvPdeProblem problem(setup.params);
    const PreparedSolver solver(grid, problem, AdiParams{}, 0.01);
    GridField u0 = payoff_state(grid, problem);
    u0.at(3, 3) = std::nan("");
    CHECK_THROWS_AS(solver.step(u0, 0.0), std::runtime_error);
}

}  // TEST_SUITE
