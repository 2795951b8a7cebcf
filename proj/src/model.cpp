#include "msk/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::GeometricConstraintViolated:
      return "GeometricConstraintViolated";
    case ErrorCode::NonPositiveLength:
      return "NonPositiveLength";
    case ErrorCode::NotMeanFree:
      return "NotMeanFree";
    case ErrorCode::SolverFailure:
      return "SolverFailure";
    case ErrorCode::EpsTooLarge:
      return "EpsTooLarge";
    case ErrorCode::EigensolverFailure:
      return "EigensolverFailure";
    case ErrorCode::DegenerateDenominator:
      return "DegenerateDenominator";
    case ErrorCode::NoSignChange:
      return "NoSignChange";
    case ErrorCode::NoAdmissibleArc:
      return "NoAdmissibleArc";
    case ErrorCode::NotAGraph:
      return "NotAGraph";
    case ErrorCode::IStarNotPositive:
      return "IStarNotPositive";
    case ErrorCode::NewtonDivergence:
      return "NewtonDivergence";
    case ErrorCode::DegenerateTrajectory:
      return "DegenerateTrajectory";
  }
  return "UnknownError";
}

ModelParams validate_params(const ModelParams& p) {
  if (!(p.l > 0.0))
    throw Error(ErrorCode::NonPositiveLength,
                "interface length l must be positive, got " +
                    std::to_string(p.l));
  if (!(p.H > 0.0))
    throw Error(ErrorCode::NonPositiveLength,
                "bulk half-depth H must be positive, got " +
                    std::to_string(p.H));
  if (!(std::abs(p.kappa) * p.l < 2.0 * std::numbers::pi))
    throw Error(ErrorCode::GeometricConstraintViolated,
                "|kappa| * l = " + std::to_string(std::abs(p.kappa) * p.l) +
                    " must be < 2*pi");
  return p;
}

namespace {

// Chebyshev-Lobatto nodes on [a, b], increasing.
Vector lobatto_nodes(double a, double b, int n) {
  const int m = n - 1;
  Vector x(n);
  for (int j = 0; j <= m; ++j)
    x[j] = a + (b - a) * 0.5 * (1.0 - std::cos(std::numbers::pi * j / m));
  x[0] = a;
  x[m] = b;
  return x;
}

// Clenshaw-Curtis weights for the n-point Lobatto rule on [a, b].
Vector clenshaw_curtis_weights(double a, double b, int n) {
  const int m = n - 1;
  Vector w = Vector::Zero(n);
  if (m == 0) {
    w[0] = b - a;
    return w;
  }
  const double scale = (b - a) / 2.0;
  if (m % 2 == 0) {
    w[0] = w[m] = 1.0 / (m * m - 1.0);
    for (int j = 1; j < m; ++j) {
      double theta = std::numbers::pi * j / m;
      double v = 1.0;
      for (int k = 1; k <= m / 2 - 1; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= std::cos(m * theta) / (m * m - 1.0);
      w[j] = 2.0 * v / m;
    }
  } else {
    w[0] = w[m] = 1.0 / (m * m);
    for (int j = 1; j < m; ++j) {
      double theta = std::numbers::pi * j / m;
      double v = 1.0;
      for (int k = 1; k <= (m - 1) / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      w[j] = 2.0 * v / m;
    }
  }
  return w * scale;
}

// Barycentric weights for Chebyshev-Lobatto points.
Vector lobatto_bary_weights(int n) {
  const int m = n - 1;
  Vector lam(n);
  for (int j = 0; j <= m; ++j) lam[j] = (j % 2 == 0) ? 1.0 : -1.0;
  lam[0] *= 0.5;
  lam[m] *= 0.5;
  return lam;
}

// Differentiation matrix from barycentric weights (negative-sum diagonal).
Matrix bary_diff_matrix(const Vector& x, const Vector& lam) {
  const int n = static_cast<int>(x.size());
  Matrix D = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (lam[j] / lam[i]) / (x[i] - x[j]);
      row_sum += D(i, j);
    }
    D(i, i) = -row_sum;
  }
  return D;
}

}  // namespace

Grid1D Grid1D::chebyshev(double l, int n, int K) {
  if (!(l > 0.0) || n < 2)
    throw Error(ErrorCode::NonPositiveLength, "grid needs l > 0 and n >= 2");
  Grid1D g;
  g.l_ = l;
  g.tag_ = BasisTag::Chebyshev;
  g.K_ = (K > 0) ? K : n - 1;
  g.nodes_ = lobatto_nodes(0.0, l, n);
  g.weights_ = clenshaw_curtis_weights(0.0, l, n);
  g.deriv_ = bary_diff_matrix(g.nodes_, lobatto_bary_weights(n));
  g.seg_begin_ = {0};
  g.seg_end_ = {n - 1};
  g.finalize();
  return g;
}

Grid1D Grid1D::uniform(double l, int n, int K) {
  if (!(l > 0.0) || n < 3)
    throw Error(ErrorCode::NonPositiveLength, "grid needs l > 0 and n >= 3");
  Grid1D g;
  g.l_ = l;
  g.tag_ = BasisTag::UniformFd;
  g.K_ = (K > 0) ? K : n - 1;
  const double h = l / (n - 1);
  g.nodes_ = Vector::LinSpaced(n, 0.0, l);
  g.weights_ = Vector::Constant(n, h);
  g.weights_[0] = g.weights_[n - 1] = h / 2.0;
  Matrix D = Matrix::Zero(n, n);
  for (int i = 1; i < n - 1; ++i) {
    D(i, i - 1) = -0.5 / h;
    D(i, i + 1) = 0.5 / h;
  }
  D(0, 0) = -1.5 / h;
  D(0, 1) = 2.0 / h;
  D(0, 2) = -0.5 / h;
  D(n - 1, n - 1) = 1.5 / h;
  D(n - 1, n - 2) = -2.0 / h;
  D(n - 1, n - 3) = 0.5 / h;
  g.deriv_ = D;
  g.seg_begin_ = {0};
  g.seg_end_ = {n - 1};
  g.finalize();
  return g;
}

Grid1D Grid1D::segmented_chebyshev(double l,
                                   const std::vector<double>& breakpoints,
                                   int nodes_per_segment, int K) {
  if (!(l > 0.0) || nodes_per_segment < 3)
    throw Error(ErrorCode::NonPositiveLength,
                "segmented grid needs l > 0 and >= 3 nodes per segment");
  std::vector<double> edges = {0.0};
  for (double b : breakpoints) edges.push_back(b);
  edges.push_back(l);
  if (!std::is_sorted(edges.begin(), edges.end()))
    throw Error(ErrorCode::NonPositiveLength, "breakpoints must be increasing");
  for (size_t s = 0; s + 1 < edges.size(); ++s)
    if (!(edges[s + 1] - edges[s] > 0.0))
      throw Error(ErrorCode::NonPositiveLength, "empty grid segment");

  Grid1D g;
  g.l_ = l;
  g.tag_ = BasisTag::Chebyshev;
  const int n_seg = static_cast<int>(edges.size()) - 1;
  const int m = nodes_per_segment;
  const int n_total = n_seg * (m - 1) + 1;
  g.K_ = (K > 0) ? K : n_total - 1;
  g.nodes_.resize(n_total);
  g.weights_ = Vector::Zero(n_total);
  g.deriv_ = Matrix::Zero(n_total, n_total);
  const Vector lam = lobatto_bary_weights(m);
  for (int s = 0; s < n_seg; ++s) {
    const int off = s * (m - 1);
    const Vector xs = lobatto_nodes(edges[s], edges[s + 1], m);
    const Vector ws = clenshaw_curtis_weights(edges[s], edges[s + 1], m);
    const Matrix Ds = bary_diff_matrix(xs, lam);
    for (int j = 0; j < m; ++j) {
      g.nodes_[off + j] = xs[j];
      g.weights_[off + j] += ws[j];
    }
    // Breakpoint rows keep the left segment's stencil.
    const int row_start = (s == 0) ? 0 : 1;
    for (int i = row_start; i < m; ++i)
      for (int j = 0; j < m; ++j) g.deriv_(off + i, off + j) = Ds(i, j);
    g.seg_begin_.push_back(off);
    g.seg_end_.push_back(off + m - 1);
  }
  g.nodes_[0] = 0.0;
  g.nodes_[n_total - 1] = l;
  g.finalize();
  return g;
}

void Grid1D::finalize() {
  const int n = size();
  stiff_ = Matrix::Zero(n, n);
  if (tag_ == BasisTag::UniformFd) {
    stiff_ = deriv_.transpose() * weights_.asDiagonal() * deriv_;
    return;
  }
  for (size_t s = 0; s < seg_begin_.size(); ++s) {
    const int b = seg_begin_[s];
    const int e = seg_end_[s];
    const int m = e - b + 1;
    // Per-segment weights, not the global ones: shared breakpoint nodes carry
    // summed weights globally but each segment integrates only its own part.
    const Matrix Ds =
        bary_diff_matrix(nodes_.segment(b, m), lobatto_bary_weights(m));
    const Vector ws = clenshaw_curtis_weights(nodes_[b], nodes_[e], m);
    stiff_.block(b, b, m, m) += Ds.transpose() * ws.asDiagonal() * Ds;
  }
}

Matrix Grid1D::interpolation_matrix(const Vector& points) const {
  const int np = static_cast<int>(points.size());
  const int n = size();
  Matrix P = Matrix::Zero(np, n);
  if (tag_ == BasisTag::UniformFd) {
    const double h = l_ / (n - 1);
    for (int i = 0; i < np; ++i) {
      double t = std::clamp(points[i], 0.0, l_) / h;
      int j = std::min(static_cast<int>(t), n - 2);
      double frac = t - j;
      P(i, j) = 1.0 - frac;
      P(i, j + 1) = frac;
    }
    return P;
  }
  for (int i = 0; i < np; ++i) {
    const double x = points[i];
    // locate segment (breakpoints belong to the left segment)
    size_t s = 0;
    while (s + 1 < seg_begin_.size() && x > nodes_[seg_end_[s]]) ++s;
    const int b = seg_begin_[s];
    const int m = seg_end_[s] - b + 1;
    const Vector lam = lobatto_bary_weights(m);
    // barycentric evaluation of the cardinal functions
    bool hit = false;
    for (int j = 0; j < m; ++j) {
      if (x == nodes_[b + j]) {
        P(i, b + j) = 1.0;
        hit = true;
        break;
      }
    }
    if (hit) continue;
    double denom = 0.0;
    for (int j = 0; j < m; ++j) denom += lam[j] / (x - nodes_[b + j]);
    for (int j = 0; j < m; ++j)
      P(i, b + j) = (lam[j] / (x - nodes_[b + j])) / denom;
  }
  return P;
}

bool same_grid(const Grid1D& a, const Grid1D& b, double tol) {
  if (a.size() != b.size() || a.basis() != b.basis()) return false;
  if (std::abs(a.length() - b.length()) > tol * std::max(1.0, a.length()))
    return false;
  return (a.nodes() - b.nodes()).lpNorm<Eigen::Infinity>() <=
         tol * std::max(1.0, a.length());
}

HeightField::HeightField(Grid1D g, Vector v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size())
    throw Error(ErrorCode::SolverFailure,
                "field size does not match grid size");
  if (!values.allFinite())
    throw Error(ErrorCode::SolverFailure, "field has non-finite values");
}

double mean(const HeightField& h) {
  return h.grid.quad(h.values) / h.grid.length();
}

double l2_norm(const HeightField& h) {
  return std::sqrt(h.grid.weights().dot(h.values.cwiseProduct(h.values)));
}

}  // namespace msk
