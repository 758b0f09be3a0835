#include "hoadi/stepper.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hoadi/parallel.hpp"

namespace hoadi {

void AdiParams::validate() const {
    if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("AdiParams: phi must lie in (0, 1]");
    if (psi != 0.5) throw std::invalid_argument("AdiParams: psi must equal 1/2 for second order in time");
}

PreparedSolver::PreparedSolver(const UniformGrid& grid, const PdeProblem& problem, AdiParams adi,
                               double dt, int threads)
    : grid_(grid), problem_(problem), adi_(adi), dt_(dt), threads_(resolve_threads(threads)),
      fop_(grid, problem), tx_(assemble_compact_x(grid, problem)),
      ty_(assemble_compact_y(grid, problem)) {
    adi_.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("PreparedSolver: dt must be > 0");
    const int m = grid_.m(), n = grid_.n();
    if (m < 7 || n < 7)
        throw std::invalid_argument("PreparedSolver: need at least 7 nodes per axis (level >= 3)");

    const double pdt = adi_.phi * dt_;
    exm_.assign(n, 0.0); ex0_.assign(n, 0.0); exp_.assign(n, 0.0);
    eym_.assign(n, 0.0); ey0_.assign(n, 0.0); eyp_.assign(n, 0.0);
    for (int j = 1; j < n - 1; ++j) {
        exm_[j] = tx_.bm[j] - pdt * tx_.am[j];
        ex0_[j] = tx_.b0[j] - pdt * tx_.a0[j];
        exp_[j] = tx_.bp[j] - pdt * tx_.ap[j];
        eym_[j] = ty_.bm[j] - pdt * ty_.am[j];
        ey0_[j] = ty_.b0[j] - pdt * ty_.a0[j];
        eyp_[j] = ty_.bp[j] - pdt * ty_.ap[j];
    }

    if (problem_.has_f1()) {
        lux_.reserve(n - 2);
        for (int j = 1; j < n - 1; ++j) {
            TridiagonalMatrix mx;
            mx.diag.assign(m - 2, ex0_[j]);
            mx.sub.assign(m - 3, exm_[j]);
            mx.super.assign(m - 3, exp_[j]);
            lux_.push_back(TridiagonalLU::factor(mx));
            pivot_fallback_ = pivot_fallback_ || lux_.back().used_dense_fallback();
        }
        ++factor_sets_;
    }
    if (problem_.has_f2()) {
        TridiagonalMatrix my;
        my.diag.resize(n - 2);
        my.sub.resize(n - 3);
        my.super.resize(n - 3);
        for (int j = 1; j < n - 1; ++j) {
            my.diag[j - 1] = ey0_[j];
            if (j > 1) my.sub[j - 2] = eym_[j];
            if (j < n - 2) my.super[j - 1] = eyp_[j];
        }
        luy_ = TridiagonalLU::factor(my);
        pivot_fallback_ = pivot_fallback_ || luy_.used_dense_fallback();
        ++factor_sets_;
    }
}

PreparedSolver::Workspace PreparedSolver::make_workspace() const {
    return Workspace{GridField(grid_), GridField(grid_), GridField(grid_), GridField(grid_),
                     GridField(grid_), PaddedField(grid_.m(), grid_.n()),
                     std::vector<double>(static_cast<size_t>(grid_.m() - 2) * (grid_.n() - 2), 0.0),
                     std::vector<double>(grid_.m(), 0.0), std::vector<double>(grid_.m(), 0.0),
                     std::vector<double>(grid_.m(), 0.0), std::vector<double>(grid_.m(), 0.0)};
}

void PreparedSolver::impose_boundaries(GridField& field, double tau) const {
    extrapolate_y_boundary(field);
    const DirichletX d = dirichlet_x(tau, grid_, problem_);
    const int m = grid_.m(), n = grid_.n();
    for (int j = 0; j < n; ++j) {
        field.at(0, j) = d.left;
        field.at(m - 1, j) = d.right;
    }
}

void PreparedSolver::x_sweep(const GridField& expl, const GridField& uold, double tau_new,
                             GridField& out, Workspace& /*ws*/) const {
    const int m = grid_.m(), n = grid_.n();
    if (!problem_.has_f1()) {  // F1 == 0 fixes the stage exactly
        for (int j = 1; j < n - 1; ++j) {
            const double* src = expl.row(j);
            double* dst = out.row(j);
            for (int i = 1; i < m - 1; ++i) dst[i] = src[i];
        }
        return;
    }
    const double pdt = adi_.phi * dt_;
    const DirichletX d = dirichlet_x(tau_new, grid_, problem_);
    parallel_for(1, n - 1, threads_, [&](long j) {
        const double bm = tx_.bm[j], b0 = tx_.b0[j], bp = tx_.bp[j];
        const double am = tx_.am[j], a0 = tx_.a0[j], ap = tx_.ap[j];
        const double* e = expl.row(static_cast<int>(j));
        const double* u = uold.row(static_cast<int>(j));
        double* o = out.row(static_cast<int>(j));
        double* rhs = o + 1;  // solve in place inside the output row
        for (int i = 1; i < m - 1; ++i)
            rhs[i - 1] = bm * e[i - 1] + b0 * e[i] + bp * e[i + 1]
                         - pdt * (am * u[i - 1] + a0 * u[i] + ap * u[i + 1]);
        rhs[0] -= exm_[j] * d.left;
        rhs[m - 3] -= exp_[j] * d.right;
        lux_[j - 1].solve(rhs);
    });
}

// One-sided fourth-order F2 along a y-boundary row: uses the six nearest
// in-domain rows, so no ghost values enter.
void PreparedSolver::f2_one_sided_row(const GridField& field, int j, int direction,
                                      double* out) const {
    static constexpr double d1[6] = {-137.0 / 60.0, 5.0, -5.0, 10.0 / 3.0, -5.0 / 4.0, 1.0 / 5.0};
    static constexpr double d2[6] = {15.0 / 4.0, -77.0 / 6.0, 107.0 / 6.0, -13.0, 61.0 / 12.0,
                                     -5.0 / 6.0};
    const int m = grid_.m();
    const double dy = grid_.dy();
    const CoefficientSet c = problem_.coefficients(grid_.y(j));
    const double* rows[6];
    for (int k = 0; k < 6; ++k) rows[k] = field.row(j + direction * k);
    const double sgn = static_cast<double>(direction);
    for (int i = 1; i < m - 1; ++i) {
        double uy = 0.0, uyy = 0.0;
        for (int k = 0; k < 6; ++k) {
            uy += d1[k] * rows[k][i];
            uyy += d2[k] * rows[k][i];
        }
        out[i] = c.a_yy * uyy / (dy * dy) + c.b_y * sgn * uy / dy;
    }
}

void PreparedSolver::y_sweep(const GridField& expl, const GridField& uold, GridField& out,
                             Workspace& ws) const {
    const int m = grid_.m(), n = grid_.n();
    if (!problem_.has_f2()) {
        for (int j = 1; j < n - 1; ++j) {
            const double* src = expl.row(j);
            double* dst = out.row(j);
            for (int i = 1; i < m - 1; ++i) dst[i] = src[i];
        }
        return;
    }
    const double pdt = adi_.phi * dt_;
    const int lanes = m - 2;
    double* rhs = ws.rhs.data();

    // Boundary rows of the unknown stage enter the j=1 and j=n-2 equations as
    // known data. The explicit-side field's rows alone lag by O(dt^2) per
    // step, which accumulates to first order in time; correcting them with
    // the stage relation row_new = row_exp + phi dt (F2(exp) - F2(old))
    // evaluated one-sided keeps the data within O(dt^3) of the stage.
    std::vector<double>& bot = ws.row_lo;
    std::vector<double>& top = ws.row_hi;
    {
        std::vector<double>& f_exp = ws.row_f1;
        std::vector<double>& f_old = ws.row_f2;
        f2_one_sided_row(expl, 0, +1, f_exp.data());
        f2_one_sided_row(uold, 0, +1, f_old.data());
        for (int i = 1; i < m - 1; ++i)
            bot[i] = expl.at(i, 0) + pdt * (f_exp[i] - f_old[i]);
        f2_one_sided_row(expl, n - 1, -1, f_exp.data());
        f2_one_sided_row(uold, n - 1, -1, f_old.data());
        for (int i = 1; i < m - 1; ++i)
            top[i] = expl.at(i, n - 1) + pdt * (f_exp[i] - f_old[i]);
    }

    parallel_for(1, n - 1, threads_, [&](long j) {
        const double bm = ty_.bm[j], b0 = ty_.b0[j], bp = ty_.bp[j];
        const double am = ty_.am[j], a0 = ty_.a0[j], ap = ty_.ap[j];
        const double* em = expl.row(static_cast<int>(j) - 1);
        const double* e0 = expl.row(static_cast<int>(j));
        const double* ep = expl.row(static_cast<int>(j) + 1);
        const double* um = uold.row(static_cast<int>(j) - 1);
        const double* u0 = uold.row(static_cast<int>(j));
        const double* up = uold.row(static_cast<int>(j) + 1);
        double* r = rhs + (j - 1) * lanes;
        for (int i = 1; i < m - 1; ++i)
            r[i - 1] = bm * em[i] + b0 * e0[i] + bp * ep[i]
                       - pdt * (am * um[i] + a0 * u0[i] + ap * up[i]);
        if (j == 1)
            for (int i = 1; i < m - 1; ++i) r[i - 1] -= eym_[1] * bot[i];
        if (j == n - 2)
            for (int i = 1; i < m - 1; ++i) r[i - 1] -= eyp_[n - 2] * top[i];
    });
    luy_.solve_many(rhs, lanes, lanes);
    for (int j = 1; j < n - 1; ++j) {
        const double* r = rhs + static_cast<size_t>(j - 1) * lanes;
        double* o = out.row(j);
        for (int i = 1; i < m - 1; ++i) o[i] = r[i - 1];
    }
}

void PreparedSolver::step_into(const GridField& u_prev, double tau_prev, GridField& out,
                               Workspace& ws) const {
    const int m = grid_.m(), n = grid_.n();
    const double tau_new = tau_prev + dt_;

    // predictor: Y0 = U + dt F(U)
    fop_.apply(u_prev, ws.fu, ws.pad, threads_);
    ws.y0 = u_prev;
    for (int j = 1; j < n - 1; ++j) {
        const double* f = ws.fu.row(j);
        double* y = ws.y0.row(j);
        for (int i = 1; i < m - 1; ++i) y[i] += dt_ * f[i];
    }
    impose_boundaries(ws.y0, tau_new);
    ws.y0.require_finite("stage Y0");

    // implicit corrections in x then y
    ws.y1 = ws.y0;
    x_sweep(ws.y0, u_prev, tau_new, ws.y1, ws);
    impose_boundaries(ws.y1, tau_new);
    ws.y1.require_finite("stage Y1");

    ws.y2 = ws.y1;
    y_sweep(ws.y1, u_prev, ws.y2, ws);
    impose_boundaries(ws.y2, tau_new);
    ws.y2.require_finite("stage Y2");

    // corrector: Y0~ = Y0 + psi dt (F(Y2) - F(U))
    fop_.apply(ws.y2, ws.fy2, ws.pad, threads_);
    for (int j = 1; j < n - 1; ++j) {
        const double* f2 = ws.fy2.row(j);
        const double* f1 = ws.fu.row(j);
        double* y = ws.y0.row(j);
        for (int i = 1; i < m - 1; ++i) y[i] += adi_.psi * dt_ * (f2[i] - f1[i]);
    }
    impose_boundaries(ws.y0, tau_new);
    ws.y0.require_finite("stage Y0~");

    ws.y1 = ws.y0;
    x_sweep(ws.y0, ws.y2, tau_new, ws.y1, ws);
    impose_boundaries(ws.y1, tau_new);
    ws.y1.require_finite("stage Y1~");

    out = ws.y1;
    y_sweep(ws.y1, ws.y2, out, ws);
    impose_boundaries(out, tau_new);
    out.require_finite("stage Y2~");
}

GridField PreparedSolver::step(const GridField& u_prev, double tau_prev) const {
    Workspace ws = make_workspace();
    GridField out(grid_);
    step_into(u_prev, tau_prev, out, ws);
    return out;
}

GridField solve_to_maturity(const UniformGrid& grid, const PdeProblem& problem, AdiParams adi,
                            const TimeGrid& timegrid, GridField u0, int threads,
                            SolveStats* stats, const StepTrace& trace) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    SolveStats local;
    if (timegrid.steps > 0) {
        PreparedSolver main(grid, problem, adi, timegrid.dt, threads);
        local.factor_sets += main.factor_sets();
        local.pivot_fallback = local.pivot_fallback || main.used_pivot_fallback();
        auto ws = main.make_workspace();
        GridField next(grid);
        double tau = 0.0;
        const int full_steps = timegrid.has_short_final_step() ? timegrid.steps - 1 : timegrid.steps;
        for (int k = 0; k < full_steps; ++k) {
            main.step_into(u0, tau, next, ws);
            std::swap(u0, next);
            tau += timegrid.dt;
            ++local.steps;
            if (trace)
                trace(local.steps, tau, u0.max_abs(),
                      std::chrono::duration<double>(clock::now() - t0).count());
        }
        if (timegrid.has_short_final_step()) {
            PreparedSolver last(grid, problem, adi, timegrid.last_dt, threads);
            local.factor_sets += last.factor_sets();
            local.pivot_fallback = local.pivot_fallback || last.used_pivot_fallback();
            last.step_into(u0, tau, next, ws);
            std::swap(u0, next);
            tau += timegrid.last_dt;
            ++local.steps;
            if (trace)
                trace(local.steps, tau, u0.max_abs(),
                      std::chrono::duration<double>(clock::now() - t0).count());
        }
    }
    local.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    if (stats) *stats = local;
    return u0;
}

}  // namespace hoadi
