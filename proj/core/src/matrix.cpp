#include "ifsc/matrix.hpp"

#include <cmath>
#include <string>

#include "ifsc/rng.hpp"

namespace ifsc {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument(std::string(who) + ": matrix must be square and non-empty, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(who) + ": matrix has non-finite entries");
  }
}

}  // namespace

Matrix cholesky(const Matrix& m) {
  require_square(m, "cholesky");
  const int n = static_cast<int>(m.rows());
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw InvalidArgument("cholesky: matrix is not symmetric");
  }

  Matrix l = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (int k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(pivot) + " at column " +
                                std::to_string(j));
    }
    l(j, j) = std::sqrt(pivot);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Matrix cholesky_psd(const Matrix& m) {
  try {
    return cholesky(m);
  } catch (const NotPositiveDefinite&) {
    const int n = static_cast<int>(m.rows());
    const double jitter = 1e-12 * m.trace() / n;
    return cholesky(m + jitter * Matrix::Identity(n, n));
  }
}

double log_det2(const Matrix& m) {
  Matrix l = cholesky(m);
  double acc = 0.0;
  for (int j = 0; j < l.rows(); ++j) acc += std::log2(l(j, j));
  return 2.0 * acc;
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  // Scale-aware singularity test: product of row max-norms bounds |det|.
  double scale = 1.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row_max = m.row(i).cwiseAbs().maxCoeff();
    if (row_max == 0.0) throw Singular("inverse: row " + std::to_string(i) + " is zero");
    scale *= row_max;
  }
  Eigen::PartialPivLU<Matrix> lu(m);
  if (std::abs(lu.determinant()) <= 1e-12 * scale) {
    throw Singular("inverse: determinant below 1e-12 * scale");
  }
  return lu.inverse();
}

CovarianceMatrix::CovarianceMatrix(Matrix entries) {
  require_square(entries, "CovarianceMatrix");
  const double scale = entries.cwiseAbs().maxCoeff();
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw InvalidArgument("CovarianceMatrix: entries are not symmetric");
  }
  entries_ = 0.5 * (entries + entries.transpose());
  const int n = dim();
  const double jitter = 1e-12 * entries_.trace() / n;
  try {
    cholesky(entries_ + jitter * Matrix::Identity(n, n));
  } catch (const NotPositiveDefinite&) {
    throw NotPositiveDefinite("CovarianceMatrix: entries are not positive semidefinite");
  }
}

CovarianceMatrix build_cov_integer(const IntMatrix& b) {
  if (b.rows() == 0 || b.rows() != b.cols()) {
    throw InvalidArgument("build_cov_integer: B must be square and non-empty");
  }
  // |det B| must be exactly 1 so that the resulting covariance has unit
  // determinant; checked in exact integer arithmetic by the caller-facing
  // lattice helper to avoid a dependency cycle, so do a local exact check.
  Matrix bd = b.cast<double>();
  Eigen::PartialPivLU<Matrix> lu(bd);
  double det = lu.determinant();
  long long det_rounded = std::llround(det);
  if (det_rounded != 1 && det_rounded != -1) {
    throw NotUnimodular("build_cov_integer: |det B| = " + std::to_string(det) + ", need 1");
  }
  if (std::abs(det - static_cast<double>(det_rounded)) > 1e-6) {
    throw NumericalInstability("build_cov_integer: determinant of B not resolved exactly");
  }
  Matrix binv = lu.inverse();
  Matrix k = binv * binv.transpose();
  return CovarianceMatrix(0.5 * (k + k.transpose()));
}

CovarianceMatrix build_cov_relay(const Matrix& h, double snr) {
  if (h.rows() == 0 || h.cols() == 0) {
    throw InvalidArgument("build_cov_relay: H must be non-empty");
  }
  if (!h.allFinite()) throw InvalidArgument("build_cov_relay: H has non-finite entries");
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw InvalidArgument("build_cov_relay: snr must be positive and finite");
  }
  const int k = static_cast<int>(h.rows());
  Matrix cov = snr * (h * h.transpose()) + Matrix::Identity(k, k);
  return CovarianceMatrix(0.5 * (cov + cov.transpose()));
}

Matrix random_gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw InvalidArgument("random_gaussian_matrix: dimensions must be positive");
  }
  RandomStream stream(seed);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = stream.normal();
  return m;
}

}  // namespace ifsc
