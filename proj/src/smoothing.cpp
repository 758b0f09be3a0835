#include "hoadi/smoothing.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hoadi/model.hpp"

namespace hoadi {

double phi4_hat(double omega) {
    if (omega == 0.0) return 1.0;
    const double t = 0.5 * omega;
    const double s = std::sin(t) / t;
    const double s2 = std::sin(t) * std::sin(t);
    const double s4 = s * s * s * s;
    return s4 * (1.0 + (2.0 / 3.0) * s2);
}

namespace {

// 4-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGlx{-0.8611363115940526, -0.3399810435848563,
                                     0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGlw{0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538};

// Accumulate (1/pi) int_a^b phi4_hat(w) cos(w x_k) dw over all half-table
// nodes x_k = k*step via composite Simpson and a rotation recurrence in k.
void accumulate_inverse(double a, double b, int panels, double step, std::vector<double>& acc) {
    const int K = static_cast<int>(acc.size());
    const double hp = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double w0 = a + p * hp;
        const std::array<double, 3> omegas{w0, w0 + 0.5 * hp, w0 + hp};
        const std::array<double, 3> weights{hp / 6.0, 4.0 * hp / 6.0, hp / 6.0};
        for (int q = 0; q < 3; ++q) {
            if (q == 2 && p + 1 < panels) continue;  // panel edge shared with the next one
            double wgt = weights[q];
            if (q == 0 && p > 0) wgt = 2.0 * hp / 6.0;  // merged edge weight
            const double om = omegas[q];
            const double f = phi4_hat(om) * wgt / M_PI;
            // cos(om * k * step): rotate by om*step per node
            const double cd = std::cos(om * step), sd = std::sin(om * step);
            double c = 1.0, s = 0.0;
            for (int k = 0; k < K; ++k) {
                acc[k] += f * c;
                const double cn = c * cd - s * sd;
                s = s * cd + c * sd;
                c = cn;
            }
        }
    }
}

}  // namespace

SmoothingKernel SmoothingKernel::build(int table_resolution) {
    if (table_resolution < 1024)
        throw std::invalid_argument("SmoothingKernel: table resolution must be >= 1024");
    SmoothingKernel k;
    const int half = table_resolution / 2;  // nodes on [0, 3]
    const double step = 3.0 / half;
    std::vector<double> halftab(half + 1, 0.0);
    // phi4_hat decays like w^-4; [0, 100] carries the mass, the tail up to
    // the 1e-12 truncation point only needs a coarse mesh.
    accumulate_inverse(0.0, 100.0, 5000, step, halftab);
    accumulate_inverse(100.0, 3200.0, 15500, step, halftab);

    k.xs_.resize(2 * half + 1);
    k.vals_.resize(2 * half + 1);
    for (int i = -half; i <= half; ++i) {
        k.xs_[i + half] = i * step;
        k.vals_[i + half] = halftab[std::abs(i)];
    }
    return k;
}

double SmoothingKernel::value(double x) const {
    const double ax = std::abs(x);
    if (ax >= 3.0) return 0.0;
    const int nn = static_cast<int>(xs_.size());
    const int half = nn / 2;
    const double step = 3.0 / half;
    int cell = static_cast<int>(ax / step);
    int start = cell - 1 + half;                       // 4-node window around |x|
    if (start < half) start = half;                    // stay in the [0,3] half
    if (start > nn - 4) start = nn - 4;
    double out = 0.0;
    for (int p = 0; p < 4; ++p) {
        double w = 1.0;
        for (int q = 0; q < 4; ++q) {
            if (q == p) continue;
            w *= (ax - xs_[start + q]) / (xs_[start + p] - xs_[start + q]);
        }
        out += w * vals_[start + p];
    }
    return out;
}

double SmoothingKernel::moment(int p) const {
    const int nn = static_cast<int>(xs_.size());
    // composite Simpson over the (odd-sized) table
    double acc = 0.0;
    const double step = xs_[1] - xs_[0];
    for (int i = 0; i + 2 < nn; i += 2) {
        const double f0 = std::pow(xs_[i], p) * vals_[i];
        const double f1 = std::pow(xs_[i + 1], p) * vals_[i + 1];
        const double f2 = std::pow(xs_[i + 2], p) * vals_[i + 2];
        acc += (step / 3.0) * (f0 + 4.0 * f1 + f2);
    }
    return acc;
}

const SmoothingKernel& shared_kernel(int table_resolution) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SmoothingKernel>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[table_resolution];
    if (!slot) slot = std::make_unique<SmoothingKernel>(SmoothingKernel::build(table_resolution));
    return *slot;
}

double smooth_profile(const SmoothingKernel& kernel, const std::function<double(double)>& f,
                      double x, double h, double kink, bool has_kink) {
    if (!(h > 0.0)) throw std::invalid_argument("smooth_profile: h must be > 0");
    // integrate int_{-3}^{3} Phi4(s) f(x - s h) ds; split at the kink image
    const double s_kink = has_kink ? (x - kink) / h : 10.0;
    const int cells = 512;
    const double width = 6.0 / cells;
    double acc = 0.0;
    for (int c = 0; c < cells; ++c) {
        double a = -3.0 + c * width;
        double b = a + width;
        const bool split = s_kink > a && s_kink < b;
        for (int part = 0; part < (split ? 2 : 1); ++part) {
            const double lo = (split && part == 1) ? s_kink : a;
            const double hi = (split && part == 0) ? s_kink : b;
            const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
            for (int q = 0; q < 4; ++q) {
                const double s = mid + rad * kGlx[q];
                acc += rad * kGlw[q] * kernel.value(s) * f(x - s * h);
            }
        }
    }
    return acc;
}

SmoothedInitialCondition smooth_initial(const SmoothingKernel& kernel, const UniformGrid& grid,
                                        double h) {
    SmoothedInitialCondition out{h, GridField(grid)};
    std::vector<double> profile(grid.m());
    auto u0 = [](double x) { return payoff(x); };
    for (int i = 0; i < grid.m(); ++i)
        profile[i] = smooth_profile(kernel, u0, grid.x(i), h, 0.0, /*has_kink=*/true);
    for (int j = 0; j < grid.n(); ++j) {
        double* row = out.field.row(j);
        for (int i = 0; i < grid.m(); ++i) row[i] = profile[i];
    }
    return out;
}

}  // namespace hoadi
