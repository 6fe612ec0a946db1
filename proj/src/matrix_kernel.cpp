#include "geominimax/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "geominimax/error.hpp"

namespace geominimax {

SymMatrix::SymMatrix(const Matrix& a) : m_(a.rows(), a.cols()) {
  if (!a.is_square() || a.rows() == 0) {
    raise(ErrorKind::kContract, "SymMatrix: need a nonempty square matrix");
  }
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = a(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  return SymMatrix(Matrix::diagonal(d));
}

SpectralDecomposition sym_eig(const SymMatrix& input) {
  const std::size_t n = input.size();
  Matrix a = input.matrix();
  Matrix v = Matrix::identity(n);

  for (double x : a.data()) {
    if (!std::isfinite(x)) raise(ErrorKind::kDomain, "sym_eig: non-finite entry");
  }

  const double norm = a.frobenius_norm();
  const double tol = kJacobiTolerance * norm;
  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = norm == 0.0 || off_diagonal() <= tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Drop entries that no longer perturb either diagonal element.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_diagonal() <= tol;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "sym_eig: Jacobi iteration did not converge within " << kJacobiMaxSweeps
        << " sweeps (||a||_F = " << norm << ")";
    raise(ErrorKind::kNumericalFailure, msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SpectralDecomposition out{Matrix(n, n), std::vector<double>(n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.lambda[col] = a(src, src);
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(v(k, src)) > 1e-12) {
        sign = v(k, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.q(k, col) = sign * v(k, src);
  }
  return out;
}

SymMatrix spectral_apply(const SpectralDecomposition& d,
                         const std::function<double(double)>& f) {
  const std::size_t n = d.lambda.size();
  std::vector<double> fl(n);
  for (std::size_t i = 0; i < n; ++i) fl[i] = f(d.lambda[i]);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += d.q(i, k) * fl[k] * d.q(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return SymMatrix(out);
}

SymMatrix sym_fun(const SpectralDecomposition& d, MatrixFunction f) {
  if (f != MatrixFunction::kExp) {
    const double lmax = d.lambda.empty() ? 0.0 : d.lambda.front();
    const double floor = kPositivityFloor * std::max(1.0, lmax);
    for (double l : d.lambda) {
      if (!(l > floor)) {
        std::ostringstream msg;
        msg << "sym_fun: eigenvalue " << l << " is not above the positivity floor " << floor;
        raise(ErrorKind::kDomain, msg.str());
      }
    }
  }
  switch (f) {
    case MatrixFunction::kExp:
      return spectral_apply(d, [](double x) { return std::exp(x); });
    case MatrixFunction::kLog:
      return spectral_apply(d, [](double x) { return std::log(x); });
    case MatrixFunction::kSqrt:
      return spectral_apply(d, [](double x) { return std::sqrt(x); });
    case MatrixFunction::kInvSqrt:
      return spectral_apply(d, [](double x) { return 1.0 / std::sqrt(x); });
  }
  raise(ErrorKind::kContract, "sym_fun: unknown function tag");
}

SymMatrix sym_fun(const SymMatrix& a, MatrixFunction f) { return sym_fun(sym_eig(a), f); }

SymMatrix congruence(const Matrix& b, const SymMatrix& a) {
  return SymMatrix(b * a.matrix() * b.transpose());
}

QrFactors qr_decompose(const Matrix& b) {
  if (!b.is_square() || b.rows() == 0) {
    raise(ErrorKind::kContract, "qr_orthonormal: need a nonempty square matrix");
  }
  const std::size_t n = b.rows();
  Matrix r = b;
  Matrix q = Matrix::identity(n);
  std::vector<double> h(n);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < n; ++i) alpha += r(i, k) * r(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (r(k, k) > 0.0) alpha = -alpha;
    // Householder vector h = x - alpha e_k, reflector I - 2 h h^T / (h^T h).
    double hh = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      h[i] = r(i, k) - (i == k ? alpha : 0.0);
      hh += h[i] * h[i];
    }
    if (hh == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += h[i] * r(i, j);
      s *= 2.0 / hh;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= s * h[i];
    }
    // Accumulate Q = H_0 H_1 ... by right-multiplication.
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t l = k; l < n; ++l) s += q(i, l) * h[l];
      s *= 2.0 / hh;
      for (std::size_t l = k; l < n; ++l) q(i, l) -= s * h[l];
    }
  }

  const double floor = 1e-12 * b.frobenius_norm();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(std::abs(r(k, k)) > floor)) {
      std::ostringstream msg;
      msg << "qr_orthonormal: rank deficient input (|R_" << k << k << "| = "
          << std::abs(r(k, k)) << ")";
      raise(ErrorKind::kDegenerateInput, msg.str());
    }
    if (r(k, k) < 0.0) {
      for (std::size_t j = 0; j < n; ++j) r(k, j) = -r(k, j);
      for (std::size_t i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
  }
  return {std::move(q), std::move(r)};
}

Matrix qr_orthonormal(const Matrix& b) { return qr_decompose(b).q; }

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

SymMatrix random_spd(std::size_t n, double mu, double l, Rng& rng) {
  if (n == 0) raise(ErrorKind::kParameter, "random_spd: n must be positive");
  if (!(mu > 0.0) || !(mu <= l)) {
    std::ostringstream msg;
    msg << "random_spd: need 0 < mu <= l (mu = " << mu << ", l = " << l << ")";
    raise(ErrorKind::kParameter, msg.str());
  }
  // Q of a rank-deficient draw has probability zero; redraw if it happens.
  Matrix q;
  for (int attempt = 0;; ++attempt) {
    try {
      q = qr_orthonormal(gaussian_matrix(n, n, rng));
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateInput || attempt >= 8) throw;
    }
  }
  std::vector<double> sigma(n);
  for (double& s : sigma) s = rng.uniform(mu, l);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * sigma[k] * q(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return SymMatrix(out);
}

}  // namespace geominimax
