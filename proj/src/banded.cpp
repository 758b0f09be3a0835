#include "hoadi/banded.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hoadi {

void TridiagonalMatrix::validate() const {
    const size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("TridiagonalMatrix: empty");
    if (sub.size() != n - 1 || super.size() != n - 1)
        throw std::invalid_argument("TridiagonalMatrix: off-diagonal lengths must be n-1");
    for (double x : diag)
        if (!std::isfinite(x)) throw std::invalid_argument("TridiagonalMatrix: non-finite entry");
    for (size_t k = 0; k + 1 < n; ++k)
        if (!std::isfinite(sub[k]) || !std::isfinite(super[k]))
            throw std::invalid_argument("TridiagonalMatrix: non-finite entry");
}

double TridiagonalMatrix::norm_inf() const {
    double m = 0.0;
    const size_t n = diag.size();
    for (size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(sub[i - 1]);
        if (i + 1 < n) row += std::abs(super[i]);
        m = std::max(m, row);
    }
    return m;
}

namespace {

// Dense partial-pivot LU used only when the Thomas pivots degenerate.
void dense_factor(const TridiagonalMatrix& m, std::vector<double>& lu, std::vector<int>& perm) {
    const int n = static_cast<int>(m.size());
    lu.assign(static_cast<size_t>(n) * n, 0.0);
    perm.resize(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = i;
        lu[static_cast<size_t>(i) * n + i] = m.diag[i];
        if (i > 0) lu[static_cast<size_t>(i) * n + i - 1] = m.sub[i - 1];
        if (i + 1 < n) lu[static_cast<size_t>(i) * n + i + 1] = m.super[i];
    }
    const double tiny = 1e-300;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double cand = std::abs(lu[static_cast<size_t>(i) * n + k]);
            if (cand > best) { best = cand; piv = i; }
        }
        if (best < tiny)
            throw std::runtime_error("tridiagonal factor: singular matrix at row " + std::to_string(k));
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(lu[static_cast<size_t>(k) * n + j], lu[static_cast<size_t>(piv) * n + j]);
            std::swap(perm[k], perm[piv]);
        }
        const double inv = 1.0 / lu[static_cast<size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = lu[static_cast<size_t>(i) * n + k] * inv;
            lu[static_cast<size_t>(i) * n + k] = f;
            for (int j = k + 1; j < n; ++j)
                lu[static_cast<size_t>(i) * n + j] -= f * lu[static_cast<size_t>(k) * n + j];
        }
    }
}

}  // namespace

TridiagonalLU TridiagonalLU::factor(const TridiagonalMatrix& m) {
    m.validate();
    TridiagonalLU lu;
    const size_t n = m.size();
    lu.n_ = n;
    lu.lower_.assign(n, 0.0);
    lu.inv_diag_.assign(n, 0.0);
    lu.super_ = m.super;

    const double pivot_floor = 1e-14 * std::max(m.norm_inf(), 1e-300);
    double d = m.diag[0];
    bool ok = std::abs(d) > pivot_floor;
    if (ok) {
        lu.inv_diag_[0] = 1.0 / d;
        for (size_t k = 1; k < n; ++k) {
            const double l = m.sub[k - 1] * lu.inv_diag_[k - 1];
            lu.lower_[k] = l;
            d = m.diag[k] - l * m.super[k - 1];
            if (!(std::abs(d) > pivot_floor)) { ok = false; break; }
            lu.inv_diag_[k] = 1.0 / d;
        }
    }
    if (!ok) {
        std::fprintf(stderr,
                     "hoadi: tridiagonal pivot underflow (n=%zu), falling back to dense partial-pivot LU\n",
                     n);
        lu.dense_ = true;
        dense_factor(m, lu.dense_lu_, lu.perm_);
    }
    return lu;
}

void TridiagonalLU::solve(double* rhs) const {
    const size_t n = n_;
    if (dense_) {
        std::vector<double> b(n);
        for (size_t i = 0; i < n; ++i) b[i] = rhs[perm_[i]];
        for (size_t i = 1; i < n; ++i) {
            double s = b[i];
            for (size_t j = 0; j < i; ++j) s -= dense_lu_[i * n + j] * b[j];
            b[i] = s;
        }
        for (size_t ii = n; ii-- > 0;) {
            double s = b[ii];
            for (size_t j = ii + 1; j < n; ++j) s -= dense_lu_[ii * n + j] * b[j];
            b[ii] = s / dense_lu_[ii * n + ii];
        }
        for (size_t i = 0; i < n; ++i) rhs[i] = b[i];
        return;
    }
    for (size_t k = 1; k < n; ++k) rhs[k] -= lower_[k] * rhs[k - 1];
    rhs[n - 1] *= inv_diag_[n - 1];
    for (size_t k = n - 1; k-- > 0;)
        rhs[k] = (rhs[k] - super_[k] * rhs[k + 1]) * inv_diag_[k];
}

void TridiagonalLU::solve_many(double* data, int count, int stride) const {
    if (dense_) {
        std::vector<double> b(n_);
        for (int k = 0; k < count; ++k) {
            for (size_t row = 0; row < n_; ++row) b[row] = data[row * stride + k];
            solve(b.data());
            for (size_t row = 0; row < n_; ++row) data[row * stride + k] = b[row];
        }
        return;
    }
    const size_t n = n_;
    for (size_t row = 1; row < n; ++row) {
        const double l = lower_[row];
        double* cur = data + row * stride;
        const double* prev = cur - stride;
        for (int k = 0; k < count; ++k) cur[k] -= l * prev[k];
    }
    {
        double* last = data + (n - 1) * stride;
        const double inv = inv_diag_[n - 1];
        for (int k = 0; k < count; ++k) last[k] *= inv;
    }
    for (size_t row = n - 1; row-- > 0;) {
        const double c = super_[row];
        const double inv = inv_diag_[row];
        double* cur = data + row * stride;
        const double* next = cur + stride;
        for (int k = 0; k < count; ++k) cur[k] = (cur[k] - c * next[k]) * inv;
    }
}

TridiagonalLU factor(const TridiagonalMatrix& m) { return TridiagonalLU::factor(m); }

std::vector<double> solve(const TridiagonalLU& lu, std::vector<double> rhs) {
    if (rhs.size() != lu.size())
        throw std::invalid_argument("solve: rhs dimension does not match the factorization");
    lu.solve(rhs.data());
    return rhs;
}

}  // namespace hoadi
