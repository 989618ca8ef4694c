#pragma once

#include <vector>

#include "ifsc/lattice.hpp"
#include "ifsc/matrix.hpp"
#include "ifsc/types.hpp"

namespace ifsc {

// Everything below is in bits (all logs are base 2) and per-sample.
//
// The compression architecture: K encoders each quantize their Gaussian
// source to distortion d and the decoder first recovers K integer linear
// combinations, given by the rows a_k of a full-rank integer matrix A, then
// inverts A. The achievable symmetric rate for a fixed A is
//
//   r(A, d) = max_k 1/2 log2( a_k^T (I + K_xx / d) a_k ),
//
// and the best A is found by minimizing over full-rank integer matrices,
// which is exactly a shortest-independent-vectors problem on the lattice
// generated by F^T, where F F^T = I + K_xx / d is the Cholesky split.

struct RifResult {
  double rate_bits;
  IntegerCoeffMatrix coeffs;
  bool exact;  // true when the coefficient search used exact enumeration
};

// Rate of the scheme for a caller-chosen coefficient matrix.
double r_if_given_coeffs(const CovarianceMatrix& kxx, double d, const IntegerCoeffMatrix& a);

// Rate with optimized coefficients. The lll search additionally considers the
// identity matrix as a fallback candidate so the result never exceeds the
// one-combination-per-source baseline.
RifResult r_if(const CovarianceMatrix& kxx, double d,
               MinimaMethod method = MinimaMethod::automatic);

// Baseline where each source is recovered directly (A = I):
// max_k 1/2 log2(1 + K_xx(k,k) / d).
double r_naive(const CovarianceMatrix& kxx, double d);

// Berger-Tung-style joint benchmark 1/(2K) log2 |I + K_xx / d|. Lower-bounds
// r_if for every full-rank A.
double r_bt_bench(const CovarianceMatrix& kxx, double d);

struct RateReport {
  double d;
  double r_if_bits;
  double r_naive_bits;
  double r_bt_bits;
  IntegerCoeffMatrix coeffs;
  bool exact;
};

RateReport compute_rates(const CovarianceMatrix& kxx, double d,
                         MinimaMethod method = MinimaMethod::automatic);

enum class RateScheme { integer_forcing, naive };

// Distortion at which the per-encoder rate of the chosen scheme equals
// target_rate_bits. Bisection on log d over [1e-12, 1e6] * trace(K_xx);
// throws Unachievable if the target lies outside that bracket.
double invert_rate_for_distortion(const CovarianceMatrix& kxx, double target_rate_bits,
                                  RateScheme scheme, MinimaMethod method = MinimaMethod::lll);

// Relay network: K relays observe y_k = h_k^T x + z_k at linear snr, compress
// at r0 bits each toward a decoder that first reconstructs the observations
// (to distortion d(r0) per relay) and then decodes the message.
struct RelayReport {
  double r0_bits;
  double d_if;
  double d_naive;
  double sum_rate_if_bits;
  double sum_rate_naive_bits;
  double upper_bound_bits;  // min(1/2 log2|I + snr H H^T|, K * r0)
};

RelayReport relay_rates(const Matrix& h, double snr, double r0,
                        MinimaMethod method = MinimaMethod::lll);

// Analog joint source-channel mapping: each of K encoders scales its source
// by beta and sends it over an AWGN channel of power p, designed for nominal
// noise n_nom. beta_opt is the largest scaling for which the decoder's
// integer-combination estimates still fit within power p:
//
//   max beta s.t. min_A max_k a_k^T (beta^2 K_xx + c I) a_k = p,
//   c = n_nom * p / (n_nom + p).
double jscc_beta_opt(double p, double n_nom, const CovarianceMatrix& kxx,
                     MinimaMethod method = MinimaMethod::automatic);

struct JsccReport {
  double p;
  double n;
  double n_nom;
  double beta_opt;
  double d_if;     // (n p / (n + p)) / beta_opt^2 at actual noise n
  double d_naive;  // (n / p) * max_k K_xx(k,k), uncoded per-source scaling
};

// Distortions at actual noise n <= n_nom for a system designed at n_nom.
JsccReport jscc_distortions(double p, double n, double n_nom, const CovarianceMatrix& kxx,
                            MinimaMethod method = MinimaMethod::automatic);

}  // namespace ifsc
