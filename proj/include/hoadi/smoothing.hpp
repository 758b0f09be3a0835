#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hoadi/grid.hpp"

namespace hoadi {

// Fourier transform of the fourth-order smoothing kernel,
// (sin(w/2)/(w/2))^4 [1 + 2/3 sin^2(w/2)].
double phi4_hat(double omega);

// Tabulated fourth-order smoothing kernel obtained by numerically inverting
// the even transform, Phi4(x) = (1/pi) int_0^inf phi4_hat(w) cos(wx) dw.
// Even, unit mass, supported on [-3, 3] up to inversion noise.
class SmoothingKernel {
  public:
    static SmoothingKernel build(int table_resolution = 4097);

    double value(double x) const;          // cubic interpolation of the table
    double table_node(int k) const { return xs_[k]; }
    double table_value(int k) const { return vals_[k]; }
    int table_size() const { return static_cast<int>(xs_.size()); }
    double support() const { return 3.0; }

    // Composite Simpson over the table, int_{-3}^{3} x^p Phi4(x) dx.
    double moment(int p) const;

  private:
    std::vector<double> xs_;    // nodes over [-3, 3]
    std::vector<double> vals_;  // mirrored from the computed half-table
};

// Process-wide cached kernel (the table does not depend on h).
const SmoothingKernel& shared_kernel(int table_resolution = 4097);

// One-dimensional mollification at a point:
//   (1/h) int Phi4(s/h) f(x - s) ds = int_{-3}^{3} Phi4(s) f(x - s h) ds.
// The integrand's kink (if f has one) is split into its own panel.
double smooth_profile(const SmoothingKernel& kernel, const std::function<double(double)>& f,
                      double x, double h, double kink = 0.0, bool has_kink = false);

struct SmoothedInitialCondition {
    double h;
    GridField field;
};

// Smoothed put payoff on the grid. The payoff is y-independent, so the
// y-factor of the tensor convolution integrates to one and the computation
// reduces to the 1-D x-convolution (checked against the 2-D tensor
// quadrature in the tests).
SmoothedInitialCondition smooth_initial(const SmoothingKernel& kernel, const UniformGrid& grid,
                                        double h);

}  // namespace hoadi
