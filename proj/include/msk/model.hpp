// model.hpp -- shared parameter and field types for the interface stability
// analyzer: problem parameters, 1D collocation grids, and nodal height fields.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace msk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  GeometricConstraintViolated,
  NonPositiveLength,
  NotMeanFree,
  SolverFailure,
  EpsTooLarge,
  EigensolverFailure,
  DegenerateDenominator,
  NoSignChange,
  NoAdmissibleArc,
  NotAGraph,
  IStarNotPositive,
  NewtonDivergence,
  DegenerateTrajectory,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Problem parameters
// ---------------------------------------------------------------------------

// Dimensionless parameters of the linearized problem.
//
// l      : interface length (> 0)
// H      : bulk strip half-depth (> 0); the bulk potential lives on
//          (0,l) x (-H,H) split along the interface
// omega1 : wall-curvature parameter at the left contact point (x = 0)
// omega2 : wall-curvature parameter at the right contact point (x = l)
// kappa  : equilibrium curvature of the interface (0 for flat, -1/R for an
//          arc of radius R)
//
// Sign convention for omega: omega_i > 0 means the bulk domain bulges
// outward at contact i (container locally convex), omega_i < 0 means the
// wall curves the other way.  An arc of length l and curvature kappa must
// fit on a circle: |kappa| * l < 2*pi.
struct ModelParams {
  double l = 1.0;
  double H = 1.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double kappa = 0.0;
};

// Returns p unchanged if all invariants hold.
// Throws NonPositiveLength if l <= 0 or H <= 0,
// GeometricConstraintViolated if |kappa| * l >= 2*pi.
ModelParams validate_params(const ModelParams& p);

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

enum class BasisTag {
  Chebyshev,  // Chebyshev-Lobatto collocation, Clenshaw-Curtis weights
  UniformFd,  // uniform nodes, trapezoid weights, 2nd-order differences
};

// One-dimensional collocation grid on [0, l].
//
// Nodes are strictly increasing with nodes[0] = 0 and nodes[n-1] = l.
// Quadrature weights are positive and sum to l.  A grid may consist of
// several abutting segments sharing breakpoint nodes; quadrature and
// differentiation are then exact per segment, which keeps integrals of
// piecewise-smooth fields (kinks at breakpoints) exact.
//
// K is the cosine-mode truncation used by the nonlocal operator coupling.
// Immutable after construction; safe to share across threads.
class Grid1D {
 public:
  Grid1D() = default;  // empty grid; assign from a factory before use

  static Grid1D chebyshev(double l, int n, int K = -1);
  static Grid1D uniform(double l, int n, int K = -1);
  // Piecewise Chebyshev grid with interior breakpoints (each strictly inside
  // (0, l)); nodes_per_segment counts nodes per segment including endpoints.
  static Grid1D segmented_chebyshev(double l,
                                    const std::vector<double>& breakpoints,
                                    int nodes_per_segment, int K = -1);

  int size() const { return static_cast<int>(nodes_.size()); }
  double length() const { return l_; }
  int modes() const { return K_; }
  BasisTag basis() const { return tag_; }
  int segment_count() const { return static_cast<int>(seg_begin_.size()); }
  // node index range [first, last] of segment s (breakpoints are shared)
  std::pair<int, int> segment(int s) const {
    return {seg_begin_[s], seg_end_[s]};
  }

  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }

  // Nodal differentiation matrix.  On segmented grids rows at interior
  // breakpoints use the left segment's stencil (one-sided at kinks).
  const Matrix& derivative_matrix() const { return deriv_; }

  // Weak gradient form: sum over segments of D_s^T W_s D_s, so that
  // h^T stiffness() h integrates |h'|^2 exactly per segment.
  const Matrix& stiffness_matrix() const { return stiff_; }

  // Evaluation matrix of the grid's interpolant at arbitrary points
  // (polynomial per Chebyshev segment, piecewise linear for uniform grids).
  Matrix interpolation_matrix(const Vector& points) const;

  double quad(const Vector& values) const { return weights_.dot(values); }

 private:
  void finalize();

  double l_ = 1.0;
  int K_ = 0;
  BasisTag tag_ = BasisTag::Chebyshev;
  Vector nodes_;
  Vector weights_;
  Matrix deriv_;
  Matrix stiff_;
  std::vector<int> seg_begin_;  // first node index of each segment
  std::vector<int> seg_end_;    // last node index (inclusive)
};

bool same_grid(const Grid1D& a, const Grid1D& b, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Height fields
// ---------------------------------------------------------------------------

// A scalar interface perturbation sampled on a grid.
struct HeightField {
  Grid1D grid;
  Vector values;

  HeightField() = default;
  HeightField(Grid1D g, Vector v);
};

// Quadrature approximation of (1/l) * integral of h; exact for constants.
double mean(const HeightField& h);

// sqrt of the quadrature L2 norm squared.
double l2_norm(const HeightField& h);

}  // namespace msk
