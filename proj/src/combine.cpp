#include "hoadi/combine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hoadi/parallel.hpp"

namespace hoadi {

int CombinationPlan::weight_sum() const {
    int s = 0;
    for (const auto& t : terms) s += t.sign;
    return s;
}

long CombinationPlan::total_nodes(const Domain& domain) const {
    long total = 0;
    for (const auto& t : terms) total += UniformGrid(domain, t.level).node_count();
    return total;
}

int CombinationPlan::finest_level() const {
    int f = 0;
    for (const auto& t : terms) f = std::max(f, t.level.max());
    return f;
}

CombinationPlan make_plan(int n, int exclusion_min) {
    if (exclusion_min < 0) throw std::invalid_argument("make_plan: exclusion_min must be >= 0");
    CombinationPlan plan;
    plan.n = n;
    plan.exclusion_min = exclusion_min;
    auto enumerate = [&](int level_sum, int sign) {
        int count = 0;
        for (int l1 = exclusion_min; l1 <= level_sum - exclusion_min; ++l1) {
            plan.terms.push_back({LevelIndex{l1, level_sum - l1}, sign});
            ++count;
        }
        return count;
    };
    const int plus = enumerate(n + 1, +1);
    const int minus = enumerate(n, -1);
    if (plus == 0 || minus == 0)
        throw std::runtime_error("make_plan: combination at level " + std::to_string(n)
                                 + " is empty after the l_i >= " + std::to_string(exclusion_min)
                                 + " exclusion; need n >= " + std::to_string(2 * exclusion_min));
    std::sort(plan.terms.begin(), plan.terms.end(), [](const SignedLevel& a, const SignedLevel& b) {
        if (a.level.l1 != b.level.l1) return a.level.l1 < b.level.l1;
        return a.level.l2 < b.level.l2;
    });
    return plan;
}

namespace {

struct AxisWindow {
    int start;
    double w[4];
};

std::vector<AxisWindow> axis_windows(const std::vector<double>& src, const std::vector<double>& dst) {
    if (src.size() < 4)
        throw std::invalid_argument("interpolate_to: source grid needs at least 4 nodes per axis");
    std::vector<AxisWindow> out(dst.size());
    const int ns = static_cast<int>(src.size());
    for (size_t k = 0; k < dst.size(); ++k) {
        const double t = dst[k];
        int cell = static_cast<int>(std::upper_bound(src.begin(), src.end(), t) - src.begin()) - 1;
        cell = std::clamp(cell, 0, ns - 2);
        int start = std::clamp(cell - 1, 0, ns - 4);
        AxisWindow win;
        win.start = start;
        for (int p = 0; p < 4; ++p) {
            double w = 1.0;
            for (int q = 0; q < 4; ++q) {
                if (q == p) continue;
                w *= (t - src[start + q]) / (src[start + p] - src[start + q]);
            }
            win.w[p] = w;
        }
        out[k] = win;
    }
    return out;
}

}  // namespace

GridField interpolate_to(const UniformGrid& source, const GridField& field,
                         const UniformGrid& target) {
    const auto wx = axis_windows(source.xs(), target.xs());
    const auto wy = axis_windows(source.ys(), target.ys());
    GridField out(target);
    for (int j = 0; j < target.n(); ++j) {
        const AxisWindow& winy = wy[j];
        double* dst = out.row(j);
        for (int i = 0; i < target.m(); ++i) {
            const AxisWindow& winx = wx[i];
            double acc = 0.0;
            for (int q = 0; q < 4; ++q) {
                const double* srow = field.row(winy.start + q);
                double inner = 0.0;
                for (int p = 0; p < 4; ++p) inner += winx.w[p] * srow[winx.start + p];
                acc += winy.w[q] * inner;
            }
            dst[i] = acc;
        }
    }
    return out;
}

double interpolate_at(const UniformGrid& source, const GridField& field, double x, double y) {
    const auto wx = axis_windows(source.xs(), {x});
    const auto wy = axis_windows(source.ys(), {y});
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) {
        const double* srow = field.row(wy[0].start + q);
        double inner = 0.0;
        for (int p = 0; p < 4; ++p) inner += wx[0].w[p] * srow[wx[0].start + p];
        acc += wy[0].w[q] * inner;
    }
    return acc;
}

GridField combine(const CombinationPlan& plan, const LevelSolver& solve_level,
                  const UniformGrid& target, int threads) {
    if (plan.terms.empty()) throw std::invalid_argument("combine: empty plan");
    std::vector<GridField> parts(plan.terms.size(), GridField(target));
    std::string failure;
    std::mutex failure_mutex;
    parallel_for(0, static_cast<long>(plan.terms.size()), threads, [&](long k) {
        const LevelIndex level = plan.terms[k].level;
        try {
            const UniformGrid sub(target.domain(), level);
            const GridField solved = solve_level(level);
            parts[k] = interpolate_to(sub, solved, target);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (failure.empty())
                failure = "combine: sub-solve at level (" + std::to_string(level.l1) + ","
                          + std::to_string(level.l2) + ") failed: " + e.what();
        }
    });
    if (!failure.empty()) throw std::runtime_error(failure);
    // deterministic signed reduction in plan (ascending-level) order
    GridField out(target, 0.0);
    for (size_t k = 0; k < plan.terms.size(); ++k) {
        const double sign = plan.terms[k].sign;
        const auto& src = parts[k].values();
        auto& dst = out.values();
        for (size_t idx = 0; idx < dst.size(); ++idx) dst[idx] += sign * src[idx];
    }
    return out;
}

}  // namespace hoadi
