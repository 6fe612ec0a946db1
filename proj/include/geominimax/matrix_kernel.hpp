#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "geominimax/matrix.hpp"
#include "geominimax/rng.hpp"

namespace geominimax {

/// Square matrix that is exactly symmetric. Construction from an arbitrary
/// square matrix replaces it by (a + a^T) / 2, which is bitwise symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& a);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

/// a = q diag(lambda) q^T with lambda sorted descending.
struct SpectralDecomposition {
  Matrix q;
  std::vector<double> lambda;
};

/// Cyclic Jacobi iteration cap (sweeps) and relative off-diagonal tolerance.
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-12;

/// Relative floor below which an eigenvalue is treated as nonpositive by the
/// log / sqrt / inv_sqrt matrix functions: lambda > floor * max(1, lambda_max).
inline constexpr double kPositivityFloor = 1e-12;

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues come back in descending order; each eigenvector column is
/// signed so that its first non-negligible component is positive, which
/// makes the output deterministic for a fixed input. Throws
/// ErrorKind::kNumericalFailure if the off-diagonal mass does not drop below
/// kJacobiTolerance * ||a||_F within kJacobiMaxSweeps sweeps.
SpectralDecomposition sym_eig(const SymMatrix& a);

enum class MatrixFunction { kExp, kLog, kSqrt, kInvSqrt };

/// q diag(f(lambda)) q^T. log, sqrt and inv_sqrt require every eigenvalue
/// above the positivity floor (ErrorKind::kDomain otherwise).
SymMatrix sym_fun(const SymMatrix& a, MatrixFunction f);
SymMatrix sym_fun(const SpectralDecomposition& d, MatrixFunction f);

/// q diag(f(lambda)) q^T for an arbitrary scalar function.
SymMatrix spectral_apply(const SpectralDecomposition& d, const std::function<double(double)>& f);

/// b a b^T, symmetrized.
SymMatrix congruence(const Matrix& b, const SymMatrix& a);

/// Orthogonal factor of b = QR (Householder), normalized so diag(R) >= 0.
/// Throws ErrorKind::kDegenerateInput when some |R_ii| <= 1e-12 * ||b||_F.
Matrix qr_orthonormal(const Matrix& b);

/// Both QR factors under the same sign convention.
struct QrFactors {
  Matrix q;
  Matrix r;
};
QrFactors qr_decompose(const Matrix& b);

/// n x n matrix of i.i.d. standard normal entries, filled row by row.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Random SPD matrix Q diag(sigma) Q^T with Q the orthogonal factor of a
/// Gaussian matrix and sigma_i ~ U[mu, l].
SymMatrix random_spd(std::size_t n, double mu, double l, Rng& rng);

}  // namespace geominimax
