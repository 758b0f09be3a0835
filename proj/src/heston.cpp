#include "hoadi/heston.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace hoadi {

namespace {

using cplx = std::complex<double>;

// Characteristic function of ln S_T in the branch-stable formulation.
struct HestonCf {
    double lnS, r, T, v0, kappa, theta, volvol, rho;

    cplx operator()(cplx u) const {
        const cplx iu = cplx(0.0, 1.0) * u;
        const cplx xi = kappa - rho * volvol * iu;
        const cplx d = std::sqrt(xi * xi + volvol * volvol * (iu + u * u));
        const cplx g = (xi - d) / (xi + d);
        const cplx ed = std::exp(-d * T);
        const cplx C = kappa * theta / (volvol * volvol)
                       * ((xi - d) * T - 2.0 * std::log((1.0 - g * ed) / (1.0 - g)));
        const cplx D = (xi - d) / (volvol * volvol) * (1.0 - ed) / (1.0 - g * ed);
        return std::exp(iu * (lnS + r * T) + C + D * v0);
    }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
           + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// A fixed initial panelization keeps the adaptive refinement from accepting
// zero when every coarse probe lands outside the integrand's support.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int initial_panels = 64) {
    const double width = (b - a) / initial_panels;
    const double panel_tol = tol / initial_panels;
    double total = 0.0;
    double fa = f(a);
    for (int p = 0; p < initial_panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == initial_panels) ? b : lo + width;
        const double m = 0.5 * (lo + hi);
        const double fm = f(m), fb = f(hi);
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, lo, hi, fa, fm, fb, whole, panel_tol, 40);
        fa = fb;
    }
    return total;
}

}  // namespace

double heston_put_price(double spot, double sigma, const OptionSpec& spec,
                        const ModelParams& params, double tol) {
    params.validate();
    spec.validate();
    if (!(spot > 0.0)) throw std::invalid_argument("heston_put_price: spot must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("heston_put_price: sigma must be > 0");
    if (params.drift != DriftForm::Linear || params.alpha != 0.0 || params.beta != 0.5)
        throw std::invalid_argument(
            "heston_put_price: closed form requires the square-root model (alpha=0, beta=1/2, linear drift)");

    // lambda0 shifts the risk-neutral drift affinely: kappa' = kappa + lambda0,
    // theta' = kappa theta / kappa'.
    double kappa = params.kappa, theta = params.theta;
    if (params.lambda0 != 0.0) {
        const double k2 = kappa + params.lambda0;
        if (!(k2 > 0.0))
            throw std::invalid_argument("heston_put_price: kappa + lambda0 must be > 0");
        theta = kappa * theta / k2;
        kappa = k2;
    }

    const double K = spec.strike, T = spec.maturity, r = params.r;
    const HestonCf cf{std::log(spot), r, T, sigma, kappa, theta, params.v, params.rho};
    const double lnK = std::log(K);
    const double fwd = spot * std::exp(r * T);

    auto integrand2 = [&](double u) {
        const cplx val = std::exp(cplx(0.0, -u * lnK)) * cf(cplx(u, 0.0)) / cplx(0.0, u);
        return val.real();
    };
    auto integrand1 = [&](double u) {
        const cplx val = std::exp(cplx(0.0, -u * lnK)) * cf(cplx(u, -1.0)) / (cplx(0.0, u) * fwd);
        return val.real();
    };

    // The integrands decay exponentially; [0, 200] truncates far below tol
    // for vol-of-vol and maturities in the model's regime.
    const double qtol = 0.01 * tol;
    const double p2 = 0.5 + integrate(integrand2, 1e-10, 200.0, qtol) / M_PI;
    const double p1 = 0.5 + integrate(integrand1, 1e-10, 200.0, qtol) / M_PI;
    const double call = spot * p1 - K * std::exp(-r * T) * p2;
    return call - spot + K * std::exp(-r * T);
}

}  // namespace hoadi
