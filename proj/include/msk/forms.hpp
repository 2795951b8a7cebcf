// forms.hpp -- the stability quadratic form
//   I*(h) = int |h'|^2 - omega1 h(0)^2 - omega2 h(l)^2 - kappa^2 int |h|^2,
// its explicit piecewise-linear test function, closed-form bracket values and
// limits, constrained minimization over mean-free fields, and the sharp
// discrete trace constant.
#pragma once

#include "msk/model.hpp"

namespace msk::forms {

struct FormReport {
  double value = 0.0;     // I*(h)
  double gradient = 0.0;  // int |h'|^2
  double boundary = 0.0;  // omega1 h(0)^2 + omega2 h(l)^2
  double curvature = 0.0; // kappa^2 int |h|^2
  bool minimizer_flag = false;
};

// I*(h) assembled with the grid's quadrature and differentiation (exact per
// segment, so piecewise-linear test functions are integrated exactly).
FormReport quadratic_form(const HeightField& h, const ModelParams& p);

// Symmetric form matrix G with h^T G h = I*(h).
Matrix form_matrix(const Grid1D& grid, const ModelParams& p);

// The piecewise-linear test function on [0,l]:
//   1 - omega1*s on [0,eps], linear descent to 0 at l/2, odd reflection
//   about l/2.  Mean-free; satisfies both Robin conditions when
//   omega2 = omega1.  Returned on a segmented grid whose quadrature is exact
//   on each linear piece.  Throws EpsTooLarge if eps >= l/4.
HeightField test_function_gbar(double eps, const ModelParams& p);

// Closed-form half-interval value
//   eps*omega^2 + (1 - omega*eps)^2/(l/2 - eps) - omega;
// the full-interval form value is twice this by odd symmetry.
double gbar_half_form_flat(double eps, double omega, double l);

// The eps -> 0 limit of the bracket for the curved case: 2/l - omega1 -
// kappa^2 * l / 6.
double curved_bracket_limit(const ModelParams& p);

struct MinFormResult {
  double mu_min = 0.0;    // smallest eigenvalue of the I* Hessian on mean-free
  HeightField minimizer;  // unit L2 norm, mean-free
};

// Minimizes I* over mean-free fields (Robin conditions enter as natural
// boundary terms, not as constraints).  I* is positive on mean-free fields
// iff mu_min > 0.
MinFormResult min_form_meanfree(const ModelParams& p, const Grid1D& grid);

// Sharp discrete constant C_delta in h(0)^2 <= delta int|h'|^2 + C int|h|^2:
// the largest generalized eigenvalue of the endpoint form against
// delta*(stiffness) + C*(mass).
double trace_constant(double delta, double l, const Grid1D& grid);

}  // namespace msk::forms
