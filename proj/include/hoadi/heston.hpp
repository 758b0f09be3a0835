#pragma once

#include "hoadi/model.hpp"

namespace hoadi {

// Semi-analytic European put price under the square-root (Heston) model by
// numerical quadrature of the characteristic-function integrals. Usable only
// for linear drift with (alpha, beta) = (0, 1/2); a nonzero lambda0 is
// folded exactly into the mean-reversion pair. `sigma` is the current
// variance. Quadrature is adaptive with absolute tolerance `tol`.
double heston_put_price(double spot, double sigma, const OptionSpec& spec,
                        const ModelParams& params, double tol = 1e-8);

}  // namespace hoadi
