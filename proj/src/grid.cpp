#include "hoadi/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hoadi {

void Domain::validate() const {
    if (!(L1 < K1)) throw std::invalid_argument("Domain: L1 < K1 required");
    if (!(0.0 < L2 && L2 < K2)) throw std::invalid_argument("Domain: 0 < L2 < K2 required");
    if (!(T > 0.0)) throw std::invalid_argument("Domain: T > 0 required");
}

UniformGrid::UniformGrid(Domain domain, LevelIndex level) : domain_(domain), level_(level) {
    domain_.validate();
    if (level.l1 < 0 || level.l2 < 0) throw std::invalid_argument("UniformGrid: levels must be >= 0");
    if (level.l1 > 30 || level.l2 > 30) throw std::invalid_argument("UniformGrid: level too large");
    const long cx = 1L << level.l1;
    const long cy = 1L << level.l2;
    m_ = static_cast<int>(cx + 1);
    n_ = static_cast<int>(cy + 1);
    const double rx = domain_.K1 - domain_.L1;
    const double ry = domain_.K2 - domain_.L2;
    dx_ = rx / static_cast<double>(cx);
    dy_ = ry / static_cast<double>(cy);
    xs_.resize(m_);
    ys_.resize(n_);
    for (int i = 0; i < m_; ++i) xs_[i] = domain_.L1 + (i * rx) / static_cast<double>(cx);
    for (int j = 0; j < n_; ++j) ys_[j] = domain_.L2 + (j * ry) / static_cast<double>(cy);
}

UniformGrid grid_from_level(const Domain& domain, LevelIndex level) {
    return UniformGrid(domain, level);
}

bool TimeGrid::has_short_final_step() const {
    return steps > 0 && last_dt != dt;
}

TimeGrid timegrid_for(double delta, double T, double c) {
    if (!(delta > 0.0)) throw std::invalid_argument("timegrid_for: delta must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("timegrid_for: c must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("timegrid_for: T must be > 0");
    TimeGrid tg;
    tg.dt = c * delta * delta;
    tg.steps = static_cast<int>(std::ceil(T / tg.dt - 1e-12));
    if (tg.steps < 1) tg.steps = 1;
    const double remainder = T - (tg.steps - 1) * tg.dt;
    tg.last_dt = remainder;
    if (!(tg.last_dt > 0.0)) {  // ceil landed one past an exact multiple
        tg.steps -= 1;
        tg.last_dt = T - (tg.steps - 1) * tg.dt;
    }
    return tg;
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

bool GridField::all_finite() const {
    for (double x : values_)
        if (!std::isfinite(x)) return false;
    return true;
}

void GridField::require_finite(const std::string& context) const {
    if (!all_finite())
        throw std::runtime_error("non-finite value detected in " + context);
}

RegionMask eval_region_mask(const UniformGrid& grid, const OptionSpec& spec,
                            const ModelParams& params) {
    spec.validate();
    // Region bounds in transformed coordinates. The S-range [E/2, 2E] maps to
    // x in [ln 1/2, ln 2]; the variance range [0.05, 1] maps through
    // y = sigma/v and is clipped to the grid's y-extent.
    const double x_lo = std::log(0.5), x_hi = std::log(2.0);
    double y_lo = 0.05 / params.v, y_hi = 1.0 / params.v;
    y_lo = std::max(y_lo, grid.domain().L2);
    y_hi = std::min(y_hi, grid.domain().K2);
    const double tol = 1e-12;

    RegionMask m{-1, -2, -1, -2};
    for (int i = 0; i < grid.m(); ++i) {
        if (grid.x(i) >= x_lo - tol && grid.x(i) <= x_hi + tol) {
            if (m.i_lo < 0) m.i_lo = i;
            m.i_hi = i;
        }
    }
    for (int j = 0; j < grid.n(); ++j) {
        if (grid.y(j) >= y_lo - tol && grid.y(j) <= y_hi + tol) {
            if (m.j_lo < 0) m.j_lo = j;
            m.j_hi = j;
        }
    }
    if (m.i_lo < 0 || m.j_lo < 0)
        throw std::runtime_error("eval_region_mask: grid too coarse, no nodes fall in the region");
    return m;
}

}  // namespace hoadi
