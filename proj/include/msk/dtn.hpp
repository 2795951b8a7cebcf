// dtn.hpp -- two-phase Dirichlet-to-Neumann operator on the reference strip
// (0,l) x (-H,H): analytic cosine-mode symbol, Neumann-to-Dirichlet inverse,
// matrix assembly on collocation grids, and an independent finite-difference
// bulk oracle.
#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "msk/model.hpp"

namespace msk::dtn {

// Mode multipliers of the Dirichlet-to-Neumann map in the cosine basis
// cos(k*pi*x/l):  d_k = 2*(k*pi/l) * tanh(k*pi*H/l),  k = 1..K.
// Mode 0 is excluded (constant Dirichlet data has zero flux jump).
struct DtnSymbol {
  ModelParams params;
  Vector d;  // d[k-1] = d_k

  int modes() const { return static_cast<int>(d.size()); }
};

DtnSymbol dtn_symbol(const ModelParams& p, int K);

// Cosine analysis/synthesis pair on a grid.
//
// analysis (K x n) maps node values to the exact cosine coefficients of the
// grid's interpolant, computed by an oversampled per-segment Clenshaw-Curtis
// rule (same-grid quadrature aliases modes k near n and is not accurate
// enough for the diagonal-action tolerances).  synthesis (n x K) evaluates
// cos(k*pi*x/l) at the nodes.
struct CosineTransform {
  Matrix analysis;
  Matrix synthesis;
};

CosineTransform cosine_transform(const Grid1D& grid, int K);

// N_MS g for mean-free g: divides cosine coefficients by d_k.
// Throws NotMeanFree if |mean(g)| > 1e-10 * ||g||.
HeightField apply_ntd(const HeightField& g, const DtnSymbol& sym);

// Node-action matrix of N_MS composed with the mean-free projector:
// M * g = nodal values of N_MS (g - mean g).  Kills constants exactly;
// self-adjoint in the grid's quadrature inner product.
Matrix assemble_ntd_matrix(const Grid1D& grid, const DtnSymbol& sym);

// Quadratic-form matrix of N_MS:  u^T B v = <N_MS u, v>_{L2(0,l)}.
// Symmetric positive semidefinite by construction.
Matrix ntd_form_matrix(const Grid1D& grid, const DtnSymbol& sym);

// Node-action matrix of the forward map D_MS (annihilates constants).
Matrix dms_node_matrix(const Grid1D& grid, const DtnSymbol& sym);

// Five-point finite-difference solver for the two-phase bulk problem: solves
// the Laplace equation on both half strips with mu = g on the interface and
// homogeneous Neumann outer walls, and returns -[[d_y mu]] on the uniform
// interface nodes (one-sided second-order differences).  The factorization
// depends only on (p, nx, ny) and is reused across right-hand sides.
class FdDtnOracle {
 public:
  FdDtnOracle(const ModelParams& p, int nx, int ny);

  HeightField apply(const HeightField& g) const;

  const Grid1D& interface_grid() const { return iface_; }

 private:
  // Both half strips are mirror images with identical discrete systems; one
  // factorization serves the upper and lower solves.
  Vector solve_half(const Vector& g_iface) const;

  ModelParams params_;
  int nx_, ny_;
  double hx_, hy_;
  Grid1D iface_;
  Eigen::SparseMatrix<double> laplace_;
  // Dirichlet coupling: rhs = dirichlet_ * g
  Eigen::SparseMatrix<double> dirichlet_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

// One-shot convenience wrapper around FdDtnOracle.
HeightField fd_dtn_oracle(const HeightField& g, const ModelParams& p, int nx,
                          int ny);

}  // namespace msk::dtn
