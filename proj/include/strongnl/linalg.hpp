#pragma once

// Dense numeric kernel: rank and null space with explicit tolerance semantics,
// and the real coordinate chart for Hermitian operators.
//
// A Hermitian m x m operator is addressed by m^2 real coordinates: the m real
// diagonal entries first, then (Re, Im) of each strict-upper entry in row-major
// order. Reconstruction fills the strict-lower triangle by conjugation, so the
// round trip coords -> matrix -> coords is exact.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace strongnl {

inline constexpr double kDefaultTol = 1e-9;

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

// Count of singular values above tol * max(1, sigma_max). Throws on an empty
// matrix or tol <= 0.
int numeric_rank(const ComplexMatrix& M, double tol = kDefaultTol);
int numeric_rank(const RealMatrix& M, double tol = kDefaultTol);

// Orthonormal basis of {x : Ax = 0}; a direction counts as null when its
// singular value is <= tol * sigma_max. Deterministic for fixed input.
std::vector<RealVector> real_nullspace(const RealMatrix& A, double tol = kDefaultTol);

// Full decomposition handle for callers that need the singular spectrum and
// right singular vectors together (the triviality oracle's gap analysis).
struct RealSvd {
  RealVector sigma;  // descending, padded with exact zeros up to cols(A)
  RealMatrix V;      // cols(A) x cols(A), orthogonal
};
RealSvd real_svd_full_v(const RealMatrix& A);

struct HermitianParam {
  int dim = 0;
  RealVector coords;

  static int coord_count(int m) { return m * m; }
  static int diag_coord(int m, int t);
  // Coordinate slots (Re, Im) of entry (r, s) with r < s.
  static std::pair<int, int> upper_coords(int m, int r, int s);

  static HermitianParam identity(int m);
  static HermitianParam from_coords(int m, RealVector c);
  static HermitianParam from_matrix(const ComplexMatrix& E);
  ComplexMatrix to_matrix() const;
};

}  // namespace strongnl
