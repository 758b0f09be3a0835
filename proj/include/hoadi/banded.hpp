#pragma once

#include <cstddef>
#include <vector>

namespace hoadi {

struct TridiagonalMatrix {
    std::vector<double> sub;    // length n-1
    std::vector<double> diag;   // length n
    std::vector<double> super;  // length n-1

    size_t size() const { return diag.size(); }
    void validate() const;
    double norm_inf() const;
};

// LU factors from the Thomas algorithm. If a pivot degenerates the
// factorization falls back to a dense partial-pivot LU of the same matrix
// (kept for badly distorted grids); a genuinely singular matrix throws.
class TridiagonalLU {
  public:
    static TridiagonalLU factor(const TridiagonalMatrix& m);

    // In-place: rhs is overwritten with the solution.
    void solve(double* rhs) const;
    void solve(std::vector<double>& rhs) const { solve(rhs.data()); }

    // Many systems sharing this matrix. Unknowns of system k live at
    // data[row*stride + k], rows 0..n-1, k < count.
    void solve_many(double* data, int count, int stride) const;

    size_t size() const { return n_; }
    bool used_dense_fallback() const { return dense_; }

    const std::vector<double>& multipliers() const { return lower_; }
    const std::vector<double>& reciprocal_pivots() const { return inv_diag_; }

  private:
    size_t n_ = 0;
    std::vector<double> lower_;     // multipliers
    std::vector<double> inv_diag_;  // reciprocal pivots
    std::vector<double> super_;     // copy of the superdiagonal
    bool dense_ = false;
    std::vector<double> dense_lu_;  // row-major n x n factors
    std::vector<int> perm_;
};

TridiagonalLU factor(const TridiagonalMatrix& m);
std::vector<double> solve(const TridiagonalLU& lu, std::vector<double> rhs);

}  // namespace hoadi
