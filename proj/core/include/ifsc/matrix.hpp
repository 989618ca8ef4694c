#pragma once

#include <cstdint>

#include "ifsc/errors.hpp"
#include "ifsc/types.hpp"

namespace ifsc {

// Symmetric positive semidefinite source covariance. Construction symmetrizes
// the input and rejects anything that is asymmetric beyond roundoff or not
// PSD (tested by factoring entries + 1e-12*trace/dim * I).
class CovarianceMatrix {
public:
  explicit CovarianceMatrix(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double trace() const { return entries_.trace(); }

private:
  Matrix entries_;
};

// Lower-triangular Cholesky factor of a symmetric positive definite matrix:
// m = L L^T with strictly positive diagonal. Throws NotPositiveDefinite when
// a pivot is <= 0, InvalidArgument when m is not square/symmetric.
Matrix cholesky(const Matrix& m);

// Cholesky factor usable for sampling from a PSD covariance: retries with a
// tiny diagonal jitter when the matrix is only semidefinite.
Matrix cholesky_psd(const Matrix& m);

// log2 |m| for symmetric positive definite m, via the Cholesky diagonal.
double log_det2(const Matrix& m);

// Inverse of a square matrix. Throws Singular when |det m| <= 1e-12 * scale,
// where scale is the product of row max-norms (Hadamard-style bound).
Matrix inverse(const Matrix& m);

// Covariance K = B^-1 B^-T for a unimodular integer B (|det B| = 1). The
// construction guarantees |det K| = 1.
CovarianceMatrix build_cov_integer(const IntMatrix& b);

// Covariance snr * H H^T + I of K relay observations y_k = h_k^T x + z_k
// with unit-power i.i.d. inputs and unit noise. snr is linear, not dB.
CovarianceMatrix build_cov_relay(const Matrix& h, double snr);

// rows x cols matrix of i.i.d. standard normals, deterministic in seed.
Matrix random_gaussian_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace ifsc
