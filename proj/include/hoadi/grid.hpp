#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hoadi/model.hpp"

namespace hoadi {

// Truncated computational rectangle [L1,K1] x [L2,K2] and horizon T.
struct Domain {
    double L1 = -5.0;
    double K1 = 1.5;
    double L2 = 0.05;
    double K2 = 2.5;
    double T = 1.0;

    void validate() const;
};

// Dyadic refinement levels per axis; level l gives 2^l cells.
struct LevelIndex {
    int l1 = 0;
    int l2 = 0;

    int max() const { return l1 > l2 ? l1 : l2; }
    int sum() const { return l1 + l2; }
    bool operator==(const LevelIndex&) const = default;
};

// Uniform tensor grid. Node coordinates are computed as
// L + (i * range) / 2^l so that nodes shared between dyadic levels are
// bitwise identical across refinements.
class UniformGrid {
  public:
    UniformGrid(Domain domain, LevelIndex level);

    const Domain& domain() const { return domain_; }
    LevelIndex level() const { return level_; }
    int m() const { return m_; }  // node count along x
    int n() const { return n_; }  // node count along y
    double dx() const { return dx_; }
    double dy() const { return dy_; }

    double x(int i) const { return xs_[i]; }
    double y(int j) const { return ys_[j]; }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

    long node_count() const { return static_cast<long>(m_) * n_; }

  private:
    Domain domain_;
    LevelIndex level_;
    int m_, n_;
    double dx_, dy_;
    std::vector<double> xs_, ys_;
};

UniformGrid grid_from_level(const Domain& domain, LevelIndex level);

// Time partition: `steps` steps of size dt except the last one, which is
// shortened so the step sizes sum to T exactly.
struct TimeGrid {
    int steps = 0;
    double dt = 0.0;
    double last_dt = 0.0;

    double horizon() const { return steps <= 0 ? 0.0 : (steps - 1) * dt + last_dt; }
    bool has_short_final_step() const;
};

// dt = c * delta^2 with delta the (relative) mesh scale, then P = ceil(T/dt)
// steps with the final one shortened to land on T.
TimeGrid timegrid_for(double delta, double T, double c);

// Scalar field over the nodes of a grid. Stored y-major (index j outer,
// i contiguous) so x-sweeps run on contiguous memory.
class GridField {
  public:
    explicit GridField(const UniformGrid& grid, double fill = 0.0)
        : m_(grid.m()), n_(grid.n()), values_(static_cast<size_t>(m_) * n_, fill) {}

    int m() const { return m_; }
    int n() const { return n_; }

    double& at(int i, int j) { return values_[static_cast<size_t>(j) * m_ + i]; }
    double at(int i, int j) const { return values_[static_cast<size_t>(j) * m_ + i]; }

    double* row(int j) { return values_.data() + static_cast<size_t>(j) * m_; }
    const double* row(int j) const { return values_.data() + static_cast<size_t>(j) * m_; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double max_abs() const;
    bool all_finite() const;
    // Throws std::runtime_error naming `context` if any value is NaN/Inf.
    void require_finite(const std::string& context) const;

  private:
    int m_, n_;
    std::vector<double> values_;
};

// Rectangular index window selecting the error-measurement region:
// S in [0.5E, 2E] mapped through x = ln(S/E), variance in [0.05, 1] mapped
// through y = sigma/v and clipped to the domain.
struct RegionMask {
    int i_lo, i_hi;  // inclusive
    int j_lo, j_hi;  // inclusive

    long count() const { return static_cast<long>(i_hi - i_lo + 1) * (j_hi - j_lo + 1); }
};

RegionMask eval_region_mask(const UniformGrid& grid, const OptionSpec& spec,
                            const ModelParams& params);

}  // namespace hoadi
