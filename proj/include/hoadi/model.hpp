#pragma once

#include <string>

namespace hoadi {

// Drift form of the variance process: linear mean reversion kappa*(theta-s)
// scaled by s^alpha, or the "N" variant kappa*s*(theta-s).
enum class DriftForm { Linear, MeanRevertingN };

enum class ModelKind {
    Sqr,           // Heston / square-root model      (alpha=0, beta=1/2)
    Var,           // GARCH diffusion                 (alpha=0, beta=1)
    ThreeHalves,   // 3/2 model                       (alpha=0, beta=3/2)
    SqrN,          // nonlinear-drift variants of the three above
    VarN,
    ThreeHalvesN,
    Custom,
};

struct ModelKindInfo {
    double alpha;
    double beta;
    DriftForm drift;
};

ModelKindInfo kind_info(ModelKind kind);
const char* kind_name(ModelKind kind);

// Parameters of the variance SDE d(sigma) = kappa*sigma^a*(theta-sigma) dt
// + v*sigma^beta dW, plus the riskless rate and the market price of
// volatility risk lambda0 (entering the pricing equation's drift only).
struct ModelParams {
    double kappa = 2.0;    // mean-reversion speed, >= 0
    double theta = 0.1;    // long-run variance mean, >= 0
    double v = 0.1;        // vol of vol, > 0
    double rho = -0.5;     // correlation, in [-1, 1]
    double r = 0.05;       // riskless rate, >= 0
    double alpha = 0.5;    // drift exponent, >= 0
    double beta = 0.5;     // diffusion exponent, >= 0
    double lambda0 = 0.0;  // market price of volatility risk
    DriftForm drift = DriftForm::Linear;

    void validate() const;  // throws std::invalid_argument with the field name

    // Effective drift exponent: the N variants equal the linear template at
    // alpha = 1, but are kept distinguishable through the flag.
    double drift_exponent() const { return drift == DriftForm::Linear ? alpha : 1.0; }

    double sde_drift(double sigma) const;      // kappa*sigma^a_eff*(theta-sigma)
    double sde_diffusion(double sigma) const;  // v*sigma^beta
};

ModelParams make_params(ModelKind kind);

struct OptionSpec {
    enum class Payoff { Put };
    double strike = 100.0;   // > 0
    double maturity = 1.0;   // > 0, years
    Payoff payoff = Payoff::Put;

    void validate() const;
};

// Change of variables x = ln(S/E), y = sigma/v, tau = T - t and the price
// scaling u = exp(r*tau) V / E.
struct TransformedPoint {
    double x;
    double y;
    double tau;
};

TransformedPoint transform(double S, double sigma, double t,
                           const OptionSpec& spec, const ModelParams& params);
double untransform_price(double u, double tau, const OptionSpec& spec,
                         const ModelParams& params);

// Put payoff in transformed variables, u(x, y, 0) = max(1 - e^x, 0).
double payoff(double x);

// Coefficients of the transformed convection-diffusion equation
//   u_tau = a_xx u_xx + a_yy u_yy + a_xy u_xy + b_x u_x + b_y u_y.
struct CoefficientSet {
    double a_xx;
    double a_yy;
    double a_xy;
    double b_x;
    double b_y;
};

CoefficientSet pde_coefficients(double y, const ModelParams& params);

// Normalised one-dimensional forms used by the implicit sweeps:
// x-direction u_xx + c1 u_x = c2 g with constants per y-row,
// y-direction u_yy + c1(y) u_y = c2(y) g with analytic c1', c1''.
struct ImplicitX {
    double c1;
    double c2;
};

struct ImplicitY {
    double c1;
    double dc1;
    double d2c1;
    double c2;
};

ImplicitX implicit_ode_coefficients_x(double y, const ModelParams& params);
ImplicitY implicit_ode_coefficients_y(double y, const ModelParams& params);

// Coefficient provider consumed by the operators and the stepper. The model
// implementation evaluates the functions above; tests inject degenerate or
// frozen-coefficient problems through the same interface.
class PdeProblem {
  public:
    virtual ~PdeProblem() = default;

    virtual CoefficientSet coefficients(double y) const = 0;
    virtual ImplicitX implicit_x(double y) const = 0;
    virtual ImplicitY implicit_y(double y) const = 0;

    // Splitting terms that are identically zero may be skipped exactly.
    virtual bool has_f0() const { return true; }
    virtual bool has_f1() const { return true; }
    virtual bool has_f2() const { return true; }

    // Dirichlet data on the x-boundaries.
    virtual double dirichlet_left(double tau, double L1) const = 0;
    virtual double dirichlet_right(double tau, double K1) const = 0;
};

class SvPdeProblem final : public PdeProblem {
  public:
    explicit SvPdeProblem(const ModelParams& params) : p_(params) { p_.validate(); }

    CoefficientSet coefficients(double y) const override { return pde_coefficients(y, p_); }
    ImplicitX implicit_x(double y) const override { return implicit_ode_coefficients_x(y, p_); }
    ImplicitY implicit_y(double y) const override { return implicit_ode_coefficients_y(y, p_); }

    double dirichlet_left(double tau, double L1) const override;
    double dirichlet_right(double tau, double K1) const override;

    const ModelParams& params() const { return p_; }

  private:
    ModelParams p_;
};

}  // namespace hoadi
