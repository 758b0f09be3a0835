#include "hoadi/operators.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hoadi/parallel.hpp"

namespace hoadi {

CompactTriples assemble_compact_x(const UniformGrid& grid, const PdeProblem& problem) {
    const int n = grid.n();
    if (grid.m() < 3 || n < 3) throw std::invalid_argument("assemble_compact_x: grid interior empty");
    const double dx = grid.dx();
    CompactTriples t(n);
    for (int j = 1; j < n - 1; ++j) {
        const ImplicitX c = problem.implicit_x(grid.y(j));
        const double c1 = c.c1, c2 = c.c2;
        t.am[j] = 1.0 / (dx * dx) - c1 / (2.0 * dx) + c1 * c1 / 12.0;
        t.a0[j] = -2.0 / (dx * dx) - c1 * c1 / 6.0;
        t.ap[j] = 1.0 / (dx * dx) + c1 / (2.0 * dx) + c1 * c1 / 12.0;
        t.bm[j] = c2 * (1.0 / 12.0 - c1 * dx / 24.0);
        t.b0[j] = c2 * (10.0 / 12.0);
        t.bp[j] = c2 * (1.0 / 12.0 + c1 * dx / 24.0);
    }
    return t;
}

CompactTriples assemble_compact_y(const UniformGrid& grid, const PdeProblem& problem) {
    const int n = grid.n();
    if (grid.m() < 3 || n < 3) throw std::invalid_argument("assemble_compact_y: grid interior empty");
    const double dy = grid.dy();
    CompactTriples t(n);
    for (int j = 1; j < n - 1; ++j) {
        const ImplicitY c = problem.implicit_y(grid.y(j));
        const double c2m = problem.implicit_y(grid.y(j - 1)).c2;
        const double c2p = problem.implicit_y(grid.y(j + 1)).c2;
        // u side: [1 + dy^2/12 (c1^2 + 2c1')] d2 + [c1 + dy^2/12 (c1 c1' + c1'')] d0
        const double P = 1.0 + dy * dy / 12.0 * (c.c1 * c.c1 + 2.0 * c.dc1);
        const double Q = c.c1 + dy * dy / 12.0 * (c.c1 * c.dc1 + c.d2c1);
        t.am[j] = P / (dy * dy) - Q / (2.0 * dy);
        t.a0[j] = -2.0 * P / (dy * dy);
        t.ap[j] = P / (dy * dy) + Q / (2.0 * dy);
        // g side: c2 g + dy^2/12 [d2(c2) g + 2 d0(c2) d0(g) + c2 d2(g)]
        //               + c1 dy^2/12 [d0(c2) g + c2 d0(g)]
        const double d0c2 = (c2p - c2m) / (2.0 * dy);
        const double d2c2 = (c2p - 2.0 * c.c2 + c2m) / (dy * dy);
        t.bm[j] = c.c2 / 12.0 - dy / 12.0 * d0c2 - c.c1 * dy / 24.0 * c.c2;
        t.b0[j] = 10.0 / 12.0 * c.c2 + dy * dy / 12.0 * d2c2 + c.c1 * dy * dy / 12.0 * d0c2;
        t.bp[j] = c.c2 / 12.0 + dy / 12.0 * d0c2 + c.c1 * dy / 24.0 * c.c2;
    }
    return t;
}

DirichletX dirichlet_x(double tau, const UniformGrid& grid, const PdeProblem& problem) {
    if (!(tau >= 0.0)) throw std::invalid_argument("dirichlet_x: tau must be >= 0");
    return {problem.dirichlet_left(tau, grid.domain().L1),
            problem.dirichlet_right(tau, grid.domain().K1)};
}

void extrapolate_ghosts(const GridField& field, PaddedField& out) {
    const int m = field.m(), n = field.n();
    if (m < 5 || n < 5) throw std::invalid_argument("extrapolate_ghosts: grid too small (need >= 5 nodes per axis)");
    if (out.m() != m || out.n() != n) throw std::invalid_argument("extrapolate_ghosts: pad size mismatch");
    for (int j = 0; j < n; ++j) {
        const double* src = field.row(j);
        double* dst = &out.at(0, j);
        for (int i = 0; i < m; ++i) dst[i] = src[i];
    }
    auto ext5 = [](double u0, double u1, double u2, double u3, double u4) {
        return 5.0 * u0 - 10.0 * u1 + 10.0 * u2 - 5.0 * u3 + u4;
    };
    for (int j = 0; j < n; ++j) {
        out.at(-1, j) = ext5(field.at(0, j), field.at(1, j), field.at(2, j), field.at(3, j), field.at(4, j));
        out.at(m, j) = ext5(field.at(m - 1, j), field.at(m - 2, j), field.at(m - 3, j), field.at(m - 4, j), field.at(m - 5, j));
    }
    for (int i = 0; i < m; ++i) {
        out.at(i, -1) = ext5(field.at(i, 0), field.at(i, 1), field.at(i, 2), field.at(i, 3), field.at(i, 4));
        out.at(i, n) = ext5(field.at(i, n - 1), field.at(i, n - 2), field.at(i, n - 3), field.at(i, n - 4), field.at(i, n - 5));
    }
    // Corner ghosts extrapolate along y through the already-filled edge-ghost
    // columns. A diagonal 5-point rule is exact on the same quartics but its
    // sampling window spans five cells of BOTH axes; on strongly anisotropic
    // grids that window covers a large part of the coarse direction and the
    // amplified extrapolation noise feeds the mixed-derivative stencil until
    // the scheme blows up (observed on cells with aspect ratio ~32). The
    // axis-aligned rule keeps the window at five cells of one axis and is
    // exact on tensor polynomials of degree 4 per coordinate.
    out.at(-1, -1) = ext5(out.at(-1, 0), out.at(-1, 1), out.at(-1, 2), out.at(-1, 3), out.at(-1, 4));
    out.at(m, -1) = ext5(out.at(m, 0), out.at(m, 1), out.at(m, 2), out.at(m, 3), out.at(m, 4));
    out.at(-1, n) = ext5(out.at(-1, n - 1), out.at(-1, n - 2), out.at(-1, n - 3), out.at(-1, n - 4), out.at(-1, n - 5));
    out.at(m, n) = ext5(out.at(m, n - 1), out.at(m, n - 2), out.at(m, n - 3), out.at(m, n - 4), out.at(m, n - 5));
}

PaddedField extrapolate_ghosts(const GridField& field) {
    PaddedField out(field.m(), field.n());
    extrapolate_ghosts(field, out);
    return out;
}

void extrapolate_y_boundary(GridField& field) {
    const int m = field.m(), n = field.n();
    if (n < 6) throw std::invalid_argument("extrapolate_y_boundary: need >= 6 nodes in y");
    const double* r1 = field.row(1);
    const double* r2 = field.row(2);
    const double* r3 = field.row(3);
    const double* r4 = field.row(4);
    const double* r5 = field.row(5);
    double* bot = field.row(0);
    for (int i = 0; i < m; ++i)
        bot[i] = 5.0 * r1[i] - 10.0 * r2[i] + 10.0 * r3[i] - 5.0 * r4[i] + r5[i];
    const double* t1 = field.row(n - 2);
    const double* t2 = field.row(n - 3);
    const double* t3 = field.row(n - 4);
    const double* t4 = field.row(n - 5);
    const double* t5 = field.row(n - 6);
    double* top = field.row(n - 1);
    for (int i = 0; i < m; ++i)
        top[i] = 5.0 * t1[i] - 10.0 * t2[i] + 10.0 * t3[i] - 5.0 * t4[i] + t5[i];
}

ExplicitOperator::ExplicitOperator(const UniformGrid& grid, const PdeProblem& problem)
    : m_(grid.m()), n_(grid.n()), dx_(grid.dx()), dy_(grid.dy()),
      f0_(problem.has_f0()), f1_(problem.has_f1()), f2_(problem.has_f2()),
      axx_(n_, 0.0), ayy_(n_, 0.0), axy_(n_, 0.0), bx_(n_, 0.0), by_(n_, 0.0) {
    for (int j = 0; j < n_; ++j) {
        const CoefficientSet c = problem.coefficients(grid.y(j));
        axx_[j] = c.a_xx;
        ayy_[j] = c.a_yy;
        axy_[j] = c.a_xy;
        bx_[j] = c.b_x;
        by_[j] = c.b_y;
    }
}

void ExplicitOperator::apply(const GridField& field, GridField& out, PaddedField& scratch,
                             int threads) const {
    if (field.m() != m_ || field.n() != n_) throw std::invalid_argument("ExplicitOperator::apply: size mismatch");
    if (is_zero()) {
        for (int j = 1; j < n_ - 1; ++j) {
            double* o = out.row(j);
            for (int i = 1; i < m_ - 1; ++i) o[i] = 0.0;
        }
        return;
    }
    extrapolate_ghosts(field, scratch);
    const long s = scratch.row_stride();
    const double ix2 = 1.0 / (12.0 * dx_ * dx_);
    const double ix1 = 1.0 / (12.0 * dx_);
    const double iy2 = 1.0 / (12.0 * dy_ * dy_);
    const double iy1 = 1.0 / (12.0 * dy_);
    const double ixy = 1.0 / (144.0 * dx_ * dy_);

    parallel_for(1, n_ - 1, threads, [&](long j) {
        const double axx = axx_[j], ayy = ayy_[j], axy = axy_[j], bx = bx_[j], by = by_[j];
        const double* c0 = scratch.row(static_cast<int>(j));
        const double* ym1 = c0 - s;
        const double* ym2 = c0 - 2 * s;
        const double* yp1 = c0 + s;
        const double* yp2 = c0 + 2 * s;
        double* o = out.row(static_cast<int>(j));
        for (int i = 1; i < m_ - 1; ++i) {
            double f = 0.0;
            if (f1_) {
                const double uxx = (-c0[i - 2] + 16.0 * c0[i - 1] - 30.0 * c0[i] + 16.0 * c0[i + 1] - c0[i + 2]) * ix2;
                const double ux = (c0[i - 2] - 8.0 * c0[i - 1] + 8.0 * c0[i + 1] - c0[i + 2]) * ix1;
                f += axx * uxx + bx * ux;
            }
            if (f2_) {
                const double uyy = (-ym2[i] + 16.0 * ym1[i] - 30.0 * c0[i] + 16.0 * yp1[i] - yp2[i]) * iy2;
                const double uy = (ym2[i] - 8.0 * ym1[i] + 8.0 * yp1[i] - yp2[i]) * iy1;
                f += ayy * uyy + by * uy;
            }
            if (f0_) {
                const double dm2 = ym2[i - 2] - 8.0 * ym2[i - 1] + 8.0 * ym2[i + 1] - ym2[i + 2];
                const double dm1 = ym1[i - 2] - 8.0 * ym1[i - 1] + 8.0 * ym1[i + 1] - ym1[i + 2];
                const double dp1 = yp1[i - 2] - 8.0 * yp1[i - 1] + 8.0 * yp1[i + 1] - yp1[i + 2];
                const double dp2 = yp2[i - 2] - 8.0 * yp2[i - 1] + 8.0 * yp2[i + 1] - yp2[i + 2];
                f += axy * (dm2 - 8.0 * dm1 + 8.0 * dp1 - dp2) * ixy;
            }
            o[i] = f;
        }
    });
}

GridField ExplicitOperator::apply(const GridField& field, int threads) const {
    GridField out(field);
    PaddedField pad(m_, n_);
    // out starts as a copy so boundary entries stay defined; interior is overwritten
    apply(field, out, pad, threads);
    return out;
}

void dump_triples_csv(std::ostream& os, const CompactTriples& t) {
    os.precision(17);
    os << "j,am,a0,ap,bm,b0,bp\n";
    for (int j = 0; j < t.size(); ++j)
        os << j << "," << t.am[j] << "," << t.a0[j] << "," << t.ap[j] << ","
           << t.bm[j] << "," << t.b0[j] << "," << t.bp[j] << "\n";
}

}  // namespace hoadi
