#include "hoadi/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hoadi {

ModelKindInfo kind_info(ModelKind kind) {
    switch (kind) {
        case ModelKind::Sqr:          return {0.0, 0.5, DriftForm::Linear};
        case ModelKind::Var:          return {0.0, 1.0, DriftForm::Linear};
        case ModelKind::ThreeHalves:  return {0.0, 1.5, DriftForm::Linear};
        case ModelKind::SqrN:         return {1.0, 0.5, DriftForm::MeanRevertingN};
        case ModelKind::VarN:         return {1.0, 1.0, DriftForm::MeanRevertingN};
        case ModelKind::ThreeHalvesN: return {1.0, 1.5, DriftForm::MeanRevertingN};
        case ModelKind::Custom:       return {0.5, 0.5, DriftForm::Linear};
    }
    throw std::invalid_argument("kind_info: unknown model kind");
}

const char* kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Sqr:          return "sqr";
        case ModelKind::Var:          return "var";
        case ModelKind::ThreeHalves:  return "three_halves";
        case ModelKind::SqrN:         return "sqrn";
        case ModelKind::VarN:         return "varn";
        case ModelKind::ThreeHalvesN: return "three_halves_n";
        case ModelKind::Custom:       return "custom";
    }
    return "?";
}

ModelParams make_params(ModelKind kind) {
    ModelParams p;
    const ModelKindInfo info = kind_info(kind);
    p.alpha = info.alpha;
    p.beta = info.beta;
    p.drift = info.drift;
    return p;
}

void ModelParams::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("ModelParams: " + what); };
    if (!(kappa >= 0.0)) bad("kappa must be >= 0");
    if (!(theta >= 0.0)) bad("theta must be >= 0");
    if (!(v > 0.0)) bad("v must be > 0");
    if (!(rho >= -1.0 && rho <= 1.0)) bad("rho must lie in [-1, 1]");
    if (!(r >= 0.0)) bad("r must be >= 0");
    if (!(alpha >= 0.0)) bad("alpha must be >= 0");
    if (!(beta >= 0.0)) bad("beta must be >= 0");
    if (!std::isfinite(lambda0)) bad("lambda0 must be finite");
}

double ModelParams::sde_drift(double sigma) const {
    return kappa * std::pow(sigma, drift_exponent()) * (theta - sigma);
}

double ModelParams::sde_diffusion(double sigma) const {
    return v * std::pow(sigma, beta);
}

void OptionSpec::validate() const {
    if (!(strike > 0.0)) throw std::invalid_argument("OptionSpec: strike must be > 0");
    if (!(maturity > 0.0)) throw std::invalid_argument("OptionSpec: maturity must be > 0");
}

TransformedPoint transform(double S, double sigma, double t,
                           const OptionSpec& spec, const ModelParams& params) {
    if (!(S > 0.0)) throw std::invalid_argument("transform: S must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("transform: sigma must be > 0");
    if (!(t >= 0.0 && t <= spec.maturity)) throw std::invalid_argument("transform: t must lie in [0, T]");
    return {std::log(S / spec.strike), sigma / params.v, spec.maturity - t};
}

double untransform_price(double u, double tau, const OptionSpec& spec,
                         const ModelParams& params) {
    if (!(tau >= 0.0)) throw std::invalid_argument("untransform_price: tau must be >= 0");
    return spec.strike * std::exp(-params.r * tau) * u;
}

double payoff(double x) { return std::max(1.0 - std::exp(x), 0.0); }

CoefficientSet pde_coefficients(double y, const ModelParams& params) {
    if (!(y > 0.0)) throw std::invalid_argument("pde_coefficients: y must be > 0");
    const double vy = params.v * y;
    CoefficientSet c;
    c.a_xx = 0.5 * vy;
    c.a_yy = 0.5 * std::pow(vy, 2.0 * params.beta);
    c.a_xy = params.rho * std::pow(vy, params.beta + 0.5);
    c.b_x = params.r - 0.5 * vy;
    c.b_y = (params.kappa * std::pow(vy, params.drift_exponent()) * (params.theta - vy)
             - params.lambda0 * vy) / params.v;
    return c;
}

ImplicitX implicit_ode_coefficients_x(double y, const ModelParams& params) {
    if (!(y > 0.0)) throw std::invalid_argument("implicit_ode_coefficients_x: y must be > 0");
    const double vy = params.v * y;
    return {2.0 * params.r / vy - 1.0, 2.0 / vy};
}

ImplicitY implicit_ode_coefficients_y(double y, const ModelParams& params) {
    if (!(y > 0.0)) throw std::invalid_argument("implicit_ode_coefficients_y: y must be > 0");
    const double vy = params.v * y;
    const double kappa = params.kappa, theta = params.theta, v = params.v;
    const double a = params.drift_exponent(), b = params.beta;
    const double p = a - 2.0 * b;   // exponent of the mean-reversion term
    const double q = 1.0 - 2.0 * b; // exponent of the lambda0 term
    // c1(y) = (2k/v) [theta (vy)^p - (vy)^(p+1)] - (2*lambda0/v) (vy)^q,
    // differentiated in y by the power rule (d/dy (vy)^s = s v (vy)^(s-1)).
    ImplicitY out;
    out.c1 = 2.0 * kappa * std::pow(vy, p) * (theta - vy) / v
             - 2.0 * params.lambda0 * std::pow(vy, q) / v;
    out.dc1 = 2.0 * kappa * (theta * p * std::pow(vy, p - 1.0) - (p + 1.0) * std::pow(vy, p))
              - 2.0 * params.lambda0 * q * std::pow(vy, q - 1.0);
    out.d2c1 = 2.0 * kappa * v * (theta * p * (p - 1.0) * std::pow(vy, p - 2.0)
                                  - (p + 1.0) * p * std::pow(vy, p - 1.0))
               - 2.0 * params.lambda0 * q * (q - 1.0) * v * std::pow(vy, q - 2.0);
    out.c2 = 2.0 / std::pow(vy, 2.0 * b);
    return out;
}

double SvPdeProblem::dirichlet_left(double tau, double L1) const {
    return 1.0 - std::exp(p_.r * tau + L1);
}

double SvPdeProblem::dirichlet_right(double /*tau*/, double /*K1*/) const { return 0.0; }

}  // namespace hoadi
