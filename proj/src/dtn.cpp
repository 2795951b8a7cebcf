#include "msk/dtn.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace msk::dtn {

using std::numbers::pi;

DtnSymbol dtn_symbol(const ModelParams& p, int K) {
  validate_params(p);
  DtnSymbol sym;
  sym.params = p;
  sym.d.resize(K);
  for (int k = 1; k <= K; ++k)
    sym.d[k - 1] = 2.0 * (k * pi / p.l) * std::tanh(k * pi * p.H / p.l);
  return sym;
}

namespace {

// Clenshaw-Curtis rule on [a,b] (duplicated from the grid internals on
// purpose: the transform should not depend on grid construction details).
void cc_rule(double a, double b, int n, Vector& x, Vector& w) {
  const int m = n - 1;
  x.resize(n);
  w.setZero(n);
  for (int j = 0; j <= m; ++j)
    x[j] = a + (b - a) * 0.5 * (1.0 - std::cos(pi * j / m));
  const double scale = (b - a) / 2.0;
  if (m % 2 == 0) {
    w[0] = w[m] = scale / (m * m - 1.0);
    for (int j = 1; j < m; ++j) {
      double theta = pi * j / m;
      double v = 1.0;
      for (int k = 1; k <= m / 2 - 1; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= std::cos(m * theta) / (m * m - 1.0);
      w[j] = scale * 2.0 * v / m;
    }
  } else {
    w[0] = w[m] = scale / (m * m);
    for (int j = 1; j < m; ++j) {
      double theta = pi * j / m;
      double v = 1.0;
      for (int k = 1; k <= (m - 1) / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      w[j] = scale * 2.0 * v / m;
    }
  }
}

}  // namespace

CosineTransform cosine_transform(const Grid1D& grid, int K) {
  const double l = grid.length();
  const int n = grid.size();

  // Oversampled quadrature nodes: enough to integrate (interpolant of
  // degree ~n) * cos(K*pi*x/l) to machine precision on every segment.
  const int n_seg = grid.segment_count();
  const int fine_per_segment = std::max(257, 4 * (n + K) / n_seg + 1);
  const int total = n_seg * fine_per_segment;
  Vector xf(total), wf(total);
  for (int s = 0; s < n_seg; ++s) {
    const auto [b, e] = grid.segment(s);
    Vector x, w;
    cc_rule(grid.nodes()[b], grid.nodes()[e], fine_per_segment, x, w);
    xf.segment(s * fine_per_segment, fine_per_segment) = x;
    wf.segment(s * fine_per_segment, fine_per_segment) = w;
  }

  const Matrix P = grid.interpolation_matrix(xf);  // total x n
  Matrix phi_fine(total, K);
  for (int k = 1; k <= K; ++k)
    phi_fine.col(k - 1) = (k * pi / l * xf.array()).cos();

  CosineTransform ct;
  ct.analysis = (2.0 / l) * phi_fine.transpose() * wf.asDiagonal() * P;
  ct.synthesis.resize(n, K);
  for (int k = 1; k <= K; ++k)
    ct.synthesis.col(k - 1) = (k * pi / l * grid.nodes().array()).cos();
  return ct;
}

HeightField apply_ntd(const HeightField& g, const DtnSymbol& sym) {
  const double nrm = l2_norm(g);
  const double mu = mean(g);
  if (std::abs(mu) > 1e-10 * std::max(nrm, 1e-300))
    throw Error(ErrorCode::NotMeanFree,
                "apply_ntd requires mean-free data, |mean| = " +
                    std::to_string(std::abs(mu)));
  const int K = sym.modes();
  const CosineTransform ct = cosine_transform(g.grid, K);
  Vector coeff = ct.analysis * g.values;
  coeff.array() /= sym.d.array();
  Vector out = ct.synthesis * coeff;
  HeightField r(g.grid, out);
  r.values.array() -= mean(r);  // clean quadrature-level mean residue
  return r;
}

Matrix assemble_ntd_matrix(const Grid1D& grid, const DtnSymbol& sym) {
  const int n = grid.size();
  const CosineTransform ct = cosine_transform(grid, sym.modes());
  const Matrix op =
      ct.synthesis * sym.d.cwiseInverse().asDiagonal() * ct.analysis;
  // compose with the quadrature mean-free projector
  const Matrix proj =
      Matrix::Identity(n, n) -
      Vector::Ones(n) * grid.weights().transpose() / grid.length();
  return op * proj;
}

Matrix ntd_form_matrix(const Grid1D& grid, const DtnSymbol& sym) {
  const CosineTransform ct = cosine_transform(grid, sym.modes());
  const Vector diag = (grid.length() / 2.0) * sym.d.cwiseInverse();
  return ct.analysis.transpose() * diag.asDiagonal() * ct.analysis;
}

Matrix dms_node_matrix(const Grid1D& grid, const DtnSymbol& sym) {
  const CosineTransform ct = cosine_transform(grid, sym.modes());
  return ct.synthesis * sym.d.asDiagonal() * ct.analysis;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

FdDtnOracle::FdDtnOracle(const ModelParams& p, int nx, int ny)
    : params_(validate_params(p)), nx_(nx), ny_(ny) {
  if (nx < 32 || ny < 32)
    throw std::invalid_argument("fd_dtn_oracle mesh must be at least 32x32");
  hx_ = p.l / nx;
  hy_ = p.H / ny;
  iface_ = Grid1D::uniform(p.l, nx + 1);

  // Vertex-centered finite-volume Laplacian on one half strip.  Unknowns are
  // u(i,j), i = 0..nx, j = 1..ny; the interface row j = 0 is Dirichlet data
  // and the remaining walls are homogeneous Neumann.  The energy form makes
  // the matrix symmetric positive definite; both half strips produce the
  // same matrix, so one assembly serves upper and lower solves.
  const int nxp = nx + 1;
  const int n_unknown = nxp * ny;
  auto idx = [nxp](int i, int j) { return (j - 1) * nxp + i; };

  std::vector<Eigen::Triplet<double>> trips;
  std::vector<Eigen::Triplet<double>> dtrips;
  trips.reserve(static_cast<size_t>(n_unknown) * 5);

  auto add_edge = [&](int ia, int ja, int ib, int jb, double c) {
    // edge between unknown (ia,ja) and unknown or Dirichlet node (ib,jb)
    const int a = idx(ia, ja);
    trips.emplace_back(a, a, c);
    if (jb == 0) {
      dtrips.emplace_back(a, ib, c);  // rhs += c * g(ib)
    } else {
      trips.emplace_back(a, idx(ib, jb), -c);
    }
  };

  for (int j = 1; j <= ny; ++j) {
    const double ty = (j == ny) ? hy_ / 2.0 : hy_;  // transverse extent
    for (int i = 0; i < nx; ++i) {
      add_edge(i, j, i + 1, j, ty / hx_);
      add_edge(i + 1, j, i, j, ty / hx_);
    }
  }
  for (int i = 0; i <= nx; ++i) {
    const double tx = (i == 0 || i == nx) ? hx_ / 2.0 : hx_;
    for (int j = 1; j <= ny; ++j) {
      // edge to the node below (j-1); j = 1 couples to the Dirichlet row
      add_edge(i, j, i, j - 1, tx / hy_);
      if (j > 1) add_edge(i, j - 1, i, j, tx / hy_);
    }
  }

  laplace_.resize(n_unknown, n_unknown);
  laplace_.setFromTriplets(trips.begin(), trips.end());
  dirichlet_.resize(n_unknown, nxp);
  dirichlet_.setFromTriplets(dtrips.begin(), dtrips.end());

  solver_.compute(laplace_);
  if (solver_.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "bulk Laplacian factorization failed");
}

Vector FdDtnOracle::solve_half(const Vector& g_iface) const {
  const Vector rhs = dirichlet_ * g_iface;
  const Vector u = solver_.solve(rhs);
  const double resid = (laplace_ * u - rhs).norm();
  if (!(resid <= 1e-10 * std::max(1.0, rhs.norm())))
    throw Error(ErrorCode::SolverFailure,
                "bulk solve residual " + std::to_string(resid));
  return u;
}

HeightField FdDtnOracle::apply(const HeightField& g) const {
  const int nxp = nx_ + 1;
  const Vector g_fd = g.grid.interpolation_matrix(iface_.nodes()) * g.values;

  const Vector up = solve_half(g_fd);
  const Vector low = solve_half(g_fd);

  // One-sided second-order normal derivatives at the interface.  The lower
  // half is the mirror image of the upper one, so its solution vector uses
  // the same indexing with y = -j*hy.
  Vector jump(nxp);
  for (int i = 0; i < nxp; ++i) {
    const double du_up =
        (-3.0 * g_fd[i] + 4.0 * up[i] - up[nxp + i]) / (2.0 * hy_);
    const double du_low =
        (3.0 * g_fd[i] - 4.0 * low[i] + low[nxp + i]) / (2.0 * hy_);
    jump[i] = du_up - du_low;
  }
  return HeightField(iface_, -jump);
}

HeightField fd_dtn_oracle(const HeightField& g, const ModelParams& p, int nx,
                          int ny) {
  return FdDtnOracle(p, nx, ny).apply(g);
}

}  // namespace msk::dtn
