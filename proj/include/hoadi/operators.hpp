#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "hoadi/grid.hpp"
#include "hoadi/model.hpp"

namespace hoadi {

// Classical fourth-order central weights on the wide 5-point stencil.
struct StencilWeights {
    // second derivative: (-1, 16, -30, 16, -1) / (12 d^2)
    static constexpr std::array<double, 5> second{-1.0, 16.0, -30.0, 16.0, -1.0};
    // first derivative: (1, -8, 0, 8, -1) / (12 d)
    static constexpr std::array<double, 5> first{1.0, -8.0, 0.0, 8.0, -1.0};
};

// Fourth-order compact discretisation of u_ss + c1 u_s = c2 g on a 3-point
// stencil: one triple acting on u (the A side) and one acting on g (the B
// side), per grid line. For the x-direction the coefficients are constant
// along the line and vary with the row's y only; for the y-direction they
// vary with j. Both are stored per j, j = 1..n-2 populated.
struct CompactTriples {
    std::vector<double> am, a0, ap;  // A side
    std::vector<double> bm, b0, bp;  // B side

    explicit CompactTriples(int n)
        : am(n, 0.0), a0(n, 0.0), ap(n, 0.0), bm(n, 0.0), b0(n, 0.0), bp(n, 0.0) {}
    int size() const { return static_cast<int>(am.size()); }
};

// u_xx + c1 u_x = c2 g per row j; the HOC elimination of u_xxx, u_xxxx via
// the once- and twice-differentiated equation gives
//   A = (1/dx^2 -+ c1/(2dx) + c1^2/12, -2/dx^2 - c1^2/6, ...)
//   B = c2 (1/12 - c1 dx/24, 10/12, 1/12 + c1 dx/24).
CompactTriples assemble_compact_x(const UniformGrid& grid, const PdeProblem& problem);

// Variable-coefficient analogue for u_yy + c1(y) u_y = c2(y) g. The c1
// derivatives enter analytically, the c2 derivatives through the same
// centred difference quotients of the nodal c2 values that appear in the
// differentiated-equation right-hand sides.
CompactTriples assemble_compact_y(const UniformGrid& grid, const PdeProblem& problem);

// Dirichlet data on the x-boundaries at backward time tau.
struct DirichletX {
    double left;
    double right;
};

DirichletX dirichlet_x(double tau, const UniformGrid& grid, const PdeProblem& problem);

// Field with a one-node ghost frame filled by five-point polynomial
// extrapolation: edge ghosts along the perpendicular coordinate, corner
// ghosts along the diagonal. Interior pad offset is +2 so that wide stencils
// evaluated at any interior node stay in bounds.
class PaddedField {
  public:
    PaddedField(int m, int n) : m_(m), n_(n), data_(static_cast<size_t>(m + 4) * (n + 4), 0.0) {}

    double& at(int i, int j) { return data_[idx(i, j)]; }
    double at(int i, int j) const { return data_[idx(i, j)]; }
    const double* row(int j) const { return data_.data() + idx(0, j); }
    int m() const { return m_; }
    int n() const { return n_; }
    long row_stride() const { return m_ + 4; }

  private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(j + 2) * (m_ + 4) + (i + 2);
    }
    int m_, n_;
    std::vector<double> data_;
};

// Copies `field` and fills the ghost frame (indices -1 and m / n).
void extrapolate_ghosts(const GridField& field, PaddedField& out);
PaddedField extrapolate_ghosts(const GridField& field);

// Overwrites rows j=0 and j=n-1 with the five-value extrapolation from the
// adjacent interior rows; everything else untouched.
void extrapolate_y_boundary(GridField& field);

// Explicit wide-stencil application of the split operators. Writes
// F = F0 + F1 + F2 at interior nodes (i=1..m-2, j=1..n-2); boundary entries
// of `out` are left as passed in.
class ExplicitOperator {
  public:
    ExplicitOperator(const UniformGrid& grid, const PdeProblem& problem);

    void apply(const GridField& field, GridField& out, PaddedField& scratch, int threads = 1) const;
    GridField apply(const GridField& field, int threads = 1) const;

    bool is_zero() const { return !f0_ && !f1_ && !f2_; }

  private:
    int m_, n_;
    double dx_, dy_;
    bool f0_, f1_, f2_;
    std::vector<double> axx_, ayy_, axy_, bx_, by_;  // per j
};

// Debug dump of assembled triples: one line per row index with the six
// coefficients, for cross-implementation diffing.
void dump_triples_csv(std::ostream& os, const CompactTriples& t);

}  // namespace hoadi
