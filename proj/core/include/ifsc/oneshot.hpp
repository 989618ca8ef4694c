#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ifsc/lattice.hpp"
#include "ifsc/matrix.hpp"

namespace ifsc {

// One-dimensional nested lattice pair: fine step sqrt(12 d) (a uniform cell
// of width s has second moment s^2/12 = d), coarse step 2^R times that, so
// each coarse cell holds exactly 2^R fine points and an index fits in R bits.
class ScalarNestedPair {
public:
  static ScalarNestedPair from_codebook(double d, long long codebook_size);
  // Requires 2^rate_bits to be a positive integer (within roundoff).
  static ScalarNestedPair from_rate(double d, double rate_bits);

  double distortion() const { return d_; }
  long long codebook_size() const { return m_; }
  double fine_step() const { return fine_step_; }
  double coarse_step() const { return coarse_step_; }
  double rate_bits() const;

private:
  ScalarNestedPair(double d, long long m);

  double d_;
  long long m_;
  double fine_step_;
  double coarse_step_;
};

// Nearest fine lattice point, rounding half-integers up.
double quantize_fine(double x, const ScalarNestedPair& pair);

// Reduce into the coarse cell [-coarse_step/2, coarse_step/2).
double mod_coarse(double x, const ScalarNestedPair& pair);

// Encoder: quantize x + dither onto the fine lattice, keep the fine index
// modulo the codebook size. dither must lie in the fine cell.
long long encode(double x, double dither, const ScalarNestedPair& pair);

// Decoder: rebuilds the dithered quantization values modulo the coarse
// lattice, recovers the integer combinations given by the rows of a (their
// variance must fit inside the coarse cell for this to be correct), then
// solves the integer system for the source estimates.
std::vector<double> decode(const std::vector<long long>& indices,
                           const std::vector<double>& dithers, const IntegerCoeffMatrix& a,
                           const ScalarNestedPair& pair);

// Modulo-limited ADC front end: fold first, quantize second. Produces the
// same index as encode() whenever the codebook size is odd; even sizes break
// the fold/quantize exchange and are rejected.
long long modulo_adc_encode(double x, double dither, const ScalarNestedPair& pair);

// Union-style upper bound on the probability that any of the k recovered
// combinations leaves its coarse cell, at rate margin delta = R - r(A, d)
// bits: min(1, 2k * exp(-(3/2) * 2^(2 delta))).
double theorem2_bound(int k, double delta_bits);

struct SimStats {
  long long trials = 0;
  long long overloads = 0;
  double empirical_overload_rate = 0.0;
  std::vector<double> mse;   // per source, over non-overload trials
  std::vector<double> bias;  // per source, over non-overload trials
};

// Monte Carlo of the full chain on x ~ N(0, kxx) with fresh dithers each
// trial. Uses the optimized coefficients when a is not supplied. An overload
// is any trial where the recovered combinations differ from the directly
// computed ones. Deterministic in seed (one substream per trial).
SimStats simulate(const CovarianceMatrix& kxx, double d, double rate_bits,
                  const std::optional<IntegerCoeffMatrix>& a, long long trials,
                  std::uint64_t seed, MinimaMethod method = MinimaMethod::automatic);

std::uint64_t simulate_trial_seed(std::uint64_t seed, long long trial_index);

}  // namespace ifsc
