#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hoadi/banded.hpp"
#include "hoadi/grid.hpp"
#include "hoadi/model.hpp"
#include "hoadi/operators.hpp"

namespace hoadi {

// Hundsdorfer-Verwer splitting parameters. psi = 1/2 is required for
// second-order accuracy in time; phi in (0, 1] damps the implicit stages.
struct AdiParams {
    double phi = 0.5;
    double psi = 0.5;

    void validate() const;
};

struct SolveStats {
    int steps = 0;
    int factor_sets = 0;  // direction factorization passes (x and y count one each)
    bool pivot_fallback = false;
    double seconds = 0.0;
};

// Called after every completed time step.
using StepTrace = std::function<void(int step, double tau, double max_norm, double seconds)>;

// Assembled compact operators and factored implicit systems for one step
// size. Immutable after construction; concurrent step() calls on distinct
// fields are safe.
class PreparedSolver {
  public:
    PreparedSolver(const UniformGrid& grid, const PdeProblem& problem, AdiParams adi,
                   double dt, int threads = 0);

    struct Workspace;

    // One HV step from tau_prev to tau_prev + dt. u_prev must carry boundary
    // values consistent with tau_prev.
    GridField step(const GridField& u_prev, double tau_prev) const;
    void step_into(const GridField& u_prev, double tau_prev, GridField& out, Workspace& ws) const;

    Workspace make_workspace() const;

    double dt() const { return dt_; }
    int factor_sets() const { return factor_sets_; }
    bool used_pivot_fallback() const { return pivot_fallback_; }
    const UniformGrid& grid() const { return grid_; }

    const std::vector<TridiagonalLU>& x_factors() const { return lux_; }
    const TridiagonalLU& y_factor() const { return luy_; }

    // Imposes the per-stage boundary data: extrapolated y-rows, then
    // Dirichlet x-columns at backward time tau.
    void impose_boundaries(GridField& field, double tau) const;

  private:
    void x_sweep(const GridField& expl, const GridField& uold, double tau_new,
                 GridField& out, Workspace& ws) const;
    void y_sweep(const GridField& expl, const GridField& uold, GridField& out,
                 Workspace& ws) const;
    void f2_one_sided_row(const GridField& field, int j, int direction, double* out) const;

    UniformGrid grid_;
    const PdeProblem& problem_;
    AdiParams adi_;
    double dt_;
    int threads_;
    ExplicitOperator fop_;
    CompactTriples tx_, ty_;
    std::vector<TridiagonalLU> lux_;  // one per interior row j
    TridiagonalLU luy_;               // shared by all interior columns
    std::vector<double> exm_, ex0_, exp_;  // (B - phi dt A) triples, x direction, per j
    std::vector<double> eym_, ey0_, eyp_;  // same, y direction
    int factor_sets_ = 0;
    bool pivot_fallback_ = false;
};

struct PreparedSolver::Workspace {
    GridField fu, y0, y1, y2, fy2;
    PaddedField pad;
    std::vector<double> rhs;  // (n-2) rows of length (m-2)
    std::vector<double> row_lo, row_hi, row_f1, row_f2;  // boundary-row scratch
};

// Full time loop: `timegrid.steps` HV steps, re-factoring once if the final
// step is shortened. u0 must be the initial condition with boundaries set
// for tau = 0.
GridField solve_to_maturity(const UniformGrid& grid, const PdeProblem& problem, AdiParams adi,
                            const TimeGrid& timegrid, GridField u0, int threads = 0,
                            SolveStats* stats = nullptr, const StepTrace& trace = {});

}  // namespace hoadi
