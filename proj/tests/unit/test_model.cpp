#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "hoadi/model.hpp"

using namespace hoadi;

namespace {
ModelParams table_params() { return ModelParams{}; }  // defaults are the experiment values
}

TEST_SUITE("model") {

TEST_CASE("named kinds fix the SDE exponents") {
    CHECK(kind_info(ModelKind::Sqr).alpha == 0.0);
    CHECK(kind_info(ModelKind::Sqr).beta == 0.5);
    CHECK(kind_info(ModelKind::Var).beta == 1.0);
    CHECK(kind_info(ModelKind::ThreeHalves).beta == 1.5);
    CHECK(kind_info(ModelKind::SqrN).drift == DriftForm::MeanRevertingN);
    CHECK(kind_info(ModelKind::VarN).beta == 1.0);
    CHECK(kind_info(ModelKind::ThreeHalvesN).beta == 1.5);
}

TEST_CASE("named kinds reproduce the SDE drift and diffusion") {
    // linear drift kinds: kappa (theta - s); N kinds: kappa s (theta - s)
    for (double sigma : {0.02, 0.1, 0.37, 1.4}) {
        for (ModelKind kind : {ModelKind::Sqr, ModelKind::Var, ModelKind::ThreeHalves}) {
            ModelParams p = make_params(kind);
            CHECK(p.sde_drift(sigma) == doctest::Approx(p.kappa * (p.theta - sigma)).epsilon(1e-14));
            CHECK(p.sde_diffusion(sigma)
                  == doctest::Approx(p.v * std::pow(sigma, p.beta)).epsilon(1e-14));
        }
        for (ModelKind kind : {ModelKind::SqrN, ModelKind::VarN, ModelKind::ThreeHalvesN}) {
            ModelParams p = make_params(kind);
            CHECK(p.sde_drift(sigma)
                  == doctest::Approx(p.kappa * sigma * (p.theta - sigma)).epsilon(1e-14));
        }
    }
}

TEST_CASE("parameter validation names the offender") {
    ModelParams p = table_params();
    p.rho = -1.5;
    CHECK_THROWS_WITH_AS(p.validate(), "ModelParams: rho must lie in [-1, 1]",
                         std::invalid_argument);
    p = table_params();
    p.v = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("transform examples") {
    OptionSpec spec;  // E=100, T=1
    ModelParams p = table_params();
    auto t1 = transform(100.0, 0.1, 0.0, spec, p);
    CHECK(t1.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(t1.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t1.tau == doctest::Approx(1.0));

    auto t2 = transform(50.0, 0.1, 0.0, spec, p);
    CHECK(t2.x == doctest::Approx(std::log(0.5)).epsilon(1e-14));  // -0.693147...

    auto t3 = transform(100.0, 0.05, 1.0, spec, p);
    CHECK(t3.y == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t3.tau == 0.0);

    CHECK_THROWS_AS(transform(-1.0, 0.1, 0.0, spec, p), std::invalid_argument);
    CHECK_THROWS_AS(transform(100.0, 0.0, 0.0, spec, p), std::invalid_argument);
}

TEST_CASE("transform round-trips to 1e-14") {
    OptionSpec spec;
    ModelParams p = table_params();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> sdist(1.0, 500.0), vdist(0.01, 1.5), tdist(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double S = sdist(rng), sigma = vdist(rng), t = tdist(rng);
        const auto tr = transform(S, sigma, t, spec, p);
        CHECK(spec.strike * std::exp(tr.x) == doctest::Approx(S).epsilon(1e-14));
        CHECK(p.v * tr.y == doctest::Approx(sigma).epsilon(1e-14));
        CHECK(spec.maturity - tr.tau == doctest::Approx(t).epsilon(1e-13));
    }
}

TEST_CASE("untransform_price examples") {
    OptionSpec spec;
    ModelParams p = table_params();
    CHECK(untransform_price(1.0, 0.0, spec, p) == doctest::Approx(100.0));
    CHECK(untransform_price(0.0, 1.0, spec, p) == 0.0);
    CHECK(untransform_price(1.0, 1.0, spec, p)
          == doctest::Approx(100.0 * std::exp(-0.05)).epsilon(1e-14));  // 95.1229...
}

TEST_CASE("pde_coefficients at the experiment parameters") {
    ModelParams p = table_params();
    const CoefficientSet c1 = pde_coefficients(1.0, p);
    CHECK(c1.a_xx == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(c1.a_yy == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(c1.a_xy == doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(std::abs(c1.b_x) < 1e-16);
    CHECK(std::abs(c1.b_y) < 1e-16);  // theta - v*y = 0 at y = theta/v

    ModelParams nocorr = p;
    nocorr.rho = 0.0;
    CHECK(pde_coefficients(0.77, nocorr).a_xy == 0.0);

    // direct evaluation: kappa (vy)^alpha (theta - vy) / v at y = 0.5
    const CoefficientSet c2 = pde_coefficients(0.5, p);
    CHECK(c2.a_xx == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(c2.a_yy == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(c2.a_xy == doctest::Approx(-0.025).epsilon(1e-14));
    CHECK(c2.b_x == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(c2.b_y == doctest::Approx(2.0 * std::sqrt(0.05) * 0.05 / 0.1).epsilon(1e-14));
    CHECK(c2.b_y == doctest::Approx(0.22360679774997896).epsilon(1e-14));

    CHECK_THROWS_AS(pde_coefficients(0.0, p), std::invalid_argument);
}

TEST_CASE("implicit x-direction coefficients") {
    ModelParams p = table_params();
    const ImplicitX a = implicit_ode_coefficients_x(1.0, p);
    CHECK(std::abs(a.c1) < 1e-16);
    CHECK(a.c2 == doctest::Approx(20.0).epsilon(1e-14));
    const ImplicitX b = implicit_ode_coefficients_x(2.0, p);
    CHECK(b.c1 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(b.c2 == doctest::Approx(10.0).epsilon(1e-14));
    ModelParams norate = p;
    norate.r = 0.0;
    CHECK(implicit_ode_coefficients_x(0.33, norate).c1 == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("implicit y-direction coefficients") {
    ModelParams p = table_params();
    const ImplicitY a = implicit_ode_coefficients_y(1.0, p);
    CHECK(std::abs(a.c1) < 1e-16);
    CHECK(a.c2 == doctest::Approx(20.0).epsilon(1e-14));

    // alpha = 2 beta makes the power factor constant: c1' = -2 kappa
    ModelParams flat = p;
    flat.alpha = 1.0;
    flat.beta = 0.5;
    CHECK(implicit_ode_coefficients_y(0.9, flat).dc1 == doctest::Approx(-2.0 * flat.kappa).epsilon(1e-13));
}

TEST_CASE("explicit and implicit coefficient routes agree") {
    ModelParams p = table_params();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ydist(0.05, 2.5);
    for (int k = 0; k < 100; ++k) {
        const double y = ydist(rng);
        const CoefficientSet c = pde_coefficients(y, p);
        const ImplicitX ix = implicit_ode_coefficients_x(y, p);
        const ImplicitY iy = implicit_ode_coefficients_y(y, p);
        CHECK(std::abs(c.a_xx * ix.c1 - c.b_x) < 1e-13 * (1.0 + std::abs(c.b_x)));
        CHECK(c.a_xx * ix.c2 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(c.a_yy * iy.c1 - c.b_y) < 1e-13 * (1.0 + std::abs(c.b_y)));
        CHECK(c.a_yy * iy.c2 == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("analytic c1 derivatives match finite differences") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ydist(0.2, 2.4);
    for (ModelParams p : {table_params(), make_params(ModelKind::Var), make_params(ModelKind::SqrN)}) {
        p.lambda0 = 0.15;  // exercise the risk-premium term too
        for (int k = 0; k < 20; ++k) {
            const double y = ydist(rng);
            const double h = 1e-5;
            const auto cm = implicit_ode_coefficients_y(y - h, p);
            const auto c0 = implicit_ode_coefficients_y(y, p);
            const auto cp = implicit_ode_coefficients_y(y + h, p);
            const double fd1 = (cp.c1 - cm.c1) / (2.0 * h);
            const double fd2 = (cp.c1 - 2.0 * c0.c1 + cm.c1) / (h * h);
            CHECK(c0.dc1 == doctest::Approx(fd1).epsilon(1e-6));
            CHECK(c0.d2c1 == doctest::Approx(fd2).epsilon(1e-4));
        }
    }
}

TEST_CASE("payoff examples") {
    CHECK(payoff(0.0) == 0.0);
    CHECK(payoff(std::log(0.5)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(payoff(1.0) == 0.0);
}

}  // TEST_SUITE
