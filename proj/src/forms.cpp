#include "msk/forms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace msk::forms {

FormReport quadratic_form(const HeightField& h, const ModelParams& p) {
  validate_params(p);
  const Grid1D& g = h.grid;
  const int n = g.size();
  FormReport r;
  r.gradient = h.values.dot(g.stiffness_matrix() * h.values);
  r.boundary = p.omega1 * h.values[0] * h.values[0] +
               p.omega2 * h.values[n - 1] * h.values[n - 1];
  r.curvature =
      p.kappa * p.kappa * g.weights().dot(h.values.cwiseProduct(h.values));
  r.value = r.gradient - r.boundary - r.curvature;
  return r;
}

Matrix form_matrix(const Grid1D& grid, const ModelParams& p) {
  const int n = grid.size();
  Matrix G = grid.stiffness_matrix();
  G(0, 0) -= p.omega1;
  G(n - 1, n - 1) -= p.omega2;
  G -= (p.kappa * p.kappa) * Matrix(grid.weights().asDiagonal());
  return G;
}

HeightField test_function_gbar(double eps, const ModelParams& p) {
  validate_params(p);
  const double l = p.l;
  if (!(eps > 0.0)) throw std::invalid_argument("gbar needs eps > 0");
  if (!(eps < l / 4.0))
    throw Error(ErrorCode::EpsTooLarge,
                "gbar needs eps < l/4, got eps = " + std::to_string(eps));
  const double w1 = p.omega1;
  Grid1D grid = Grid1D::segmented_chebyshev(l, {eps, l - eps}, 9);
  Vector v(grid.size());
  const double peak = 1.0 - w1 * eps;
  for (int i = 0; i < grid.size(); ++i) {
    const double s = grid.nodes()[i];
    if (s <= eps)
      v[i] = 1.0 - w1 * s;
    else if (s <= l - eps)
      v[i] = peak * (l / 2.0 - s) / (l / 2.0 - eps);
    else
      v[i] = -(1.0 - w1 * (l - s));
  }
  return HeightField(grid, v);
}

double gbar_half_form_flat(double eps, double omega, double l) {
  return eps * omega * omega +
         (1.0 - omega * eps) * (1.0 - omega * eps) / (l / 2.0 - eps) - omega;
}

double curved_bracket_limit(const ModelParams& p) {
  // closed-form limit value; admissible at the geometric boundary
  // |kappa|*l = 2*pi as well, since it is exactly the limit expression
  if (!(p.l > 0.0))
    throw Error(ErrorCode::NonPositiveLength, "bracket limit needs l > 0");
  return 2.0 / p.l - p.omega1 - p.kappa * p.kappa * p.l / 6.0;
}

namespace {

// Orthonormal basis of the null space of a single constraint row.
Matrix null_basis_of_row(const Vector& row) {
  const int n = static_cast<int>(row.size());
  Matrix col = row;
  Eigen::HouseholderQR<Matrix> qr{col};
  Matrix Q = qr.householderQ();
  return Q.rightCols(n - 1);
}

}  // namespace

MinFormResult min_form_meanfree(const ModelParams& p, const Grid1D& grid) {
  validate_params(p);
  const Matrix G = form_matrix(grid, p);
  const Matrix W = grid.weights().asDiagonal();
  const Matrix Q = null_basis_of_row(grid.weights());

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(
      Q.transpose() * G * Q, Q.transpose() * W * Q);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::EigensolverFailure,
                "mean-free form minimization failed");

  MinFormResult r;
  r.mu_min = es.eigenvalues()[0];
  Vector u = Q * es.eigenvectors().col(0);
  const double nrm = std::sqrt(grid.weights().dot(u.cwiseProduct(u)));
  if (nrm > 0.0) u /= nrm;
  r.minimizer = HeightField(grid, u);
  return r;
}

double trace_constant(double delta, double l, const Grid1D& grid) {
  if (!(delta > 0.0))
    throw std::invalid_argument("trace_constant needs delta > 0");
  if (std::abs(grid.length() - l) > 1e-12 * std::max(1.0, l))
    throw std::invalid_argument("trace_constant grid length mismatch");
  const int n = grid.size();
  Matrix A = -delta * grid.stiffness_matrix();
  A(0, 0) += 1.0;
  const Matrix W = grid.weights().asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(A, W);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::EigensolverFailure, "trace constant solve failed");
  return es.eigenvalues()[n - 1];
}

}  // namespace msk::forms
