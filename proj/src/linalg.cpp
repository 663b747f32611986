#include "strongnl/linalg.hpp"

#include <stdexcept>

namespace strongnl {

namespace {

void require_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

template <typename Matrix>
int rank_impl(const Matrix& M, double tol) {
  require_tol(tol);
  if (M.rows() == 0 || M.cols() == 0) {
    throw std::invalid_argument("numeric_rank: empty matrix");
  }
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sigma = svd.singularValues();
  const double threshold = tol * std::max(1.0, sigma(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return rank;
}

}  // namespace

int numeric_rank(const ComplexMatrix& M, double tol) { return rank_impl(M, tol); }
int numeric_rank(const RealMatrix& M, double tol) { return rank_impl(M, tol); }

RealSvd real_svd_full_v(const RealMatrix& A) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0 || n == 0) {
    // No constraints: the spectrum is all-zero and any orthonormal frame works.
    return RealSvd{RealVector::Zero(n), RealMatrix::Identity(n, n)};
  }
  Eigen::BDCSVD<RealMatrix> svd(A, Eigen::ComputeFullV);
  RealVector sigma = RealVector::Zero(n);
  sigma.head(svd.singularValues().size()) = svd.singularValues();
  return RealSvd{std::move(sigma), svd.matrixV()};
}

std::vector<RealVector> real_nullspace(const RealMatrix& A, double tol) {
  require_tol(tol);
  const RealSvd svd = real_svd_full_v(A);
  const double sigma_max = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
  const double threshold = tol * sigma_max;
  std::vector<RealVector> basis;
  for (Eigen::Index i = 0; i < svd.sigma.size(); ++i) {
    if (svd.sigma(i) <= threshold) basis.push_back(svd.V.col(i));
  }
  return basis;
}

int HermitianParam::diag_coord(int m, int t) {
  if (t < 0 || t >= m) throw std::invalid_argument("diag_coord: index out of range");
  return t;
}

std::pair<int, int> HermitianParam::upper_coords(int m, int r, int s) {
  if (!(0 <= r && r < s && s < m)) {
    throw std::invalid_argument("upper_coords: need 0 <= r < s < m");
  }
  // Row-major position of (r, s) among strict-upper pairs.
  const int k = r * m - r * (r + 1) / 2 + (s - r - 1);
  return {m + 2 * k, m + 2 * k + 1};
}

HermitianParam HermitianParam::identity(int m) {
  HermitianParam p{m, RealVector::Zero(coord_count(m))};
  p.coords.head(m).setOnes();
  return p;
}

HermitianParam HermitianParam::from_coords(int m, RealVector c) {
  if (c.size() != coord_count(m)) {
    throw std::invalid_argument("from_coords: expected m^2 coordinates");
  }
  return HermitianParam{m, std::move(c)};
}

HermitianParam HermitianParam::from_matrix(const ComplexMatrix& E) {
  const int m = static_cast<int>(E.rows());
  if (E.cols() != m || m == 0) {
    throw std::invalid_argument("from_matrix: expected a nonempty square matrix");
  }
  for (int r = 0; r < m; ++r) {
    for (int s = 0; s < m; ++s) {
      if (E(r, s) != std::conj(E(s, r))) {
        throw std::invalid_argument("from_matrix: matrix is not Hermitian");
      }
    }
  }
  HermitianParam p{m, RealVector::Zero(coord_count(m))};
  for (int t = 0; t < m; ++t) p.coords(diag_coord(m, t)) = E(t, t).real();
  for (int r = 0; r < m; ++r) {
    for (int s = r + 1; s < m; ++s) {
      const auto [re, im] = upper_coords(m, r, s);
      p.coords(re) = E(r, s).real();
      p.coords(im) = E(r, s).imag();
    }
  }
  return p;
}

ComplexMatrix HermitianParam::to_matrix() const {
  ComplexMatrix E = ComplexMatrix::Zero(dim, dim);
  for (int t = 0; t < dim; ++t) E(t, t) = coords(diag_coord(dim, t));
  for (int r = 0; r < dim; ++r) {
    for (int s = r + 1; s < dim; ++s) {
      const auto [re, im] = upper_coords(dim, r, s);
      E(r, s) = Complex(coords(re), coords(im));
      E(s, r) = Complex(coords(re), -coords(im));
    }
  }
  return E;
}

}  // namespace strongnl
