#include "ifsc/oneshot.hpp"

#include <cmath>
#include <string>

#include "ifsc/rates.hpp"
#include "ifsc/rng.hpp"

namespace ifsc {

namespace {

void require_dither(double dither, const ScalarNestedPair& pair, const char* who) {
  const double half = 0.5 * pair.fine_step();
  if (!(dither >= -half && dither < half)) {
    throw InvalidArgument(std::string(who) + ": dither must lie in [-fine_step/2, fine_step/2)");
  }
}

void require_finite_input(double x, double step, const char* who) {
  // floor(x / step + 0.5) must stay exact, so the quotient has to fit well
  // inside 2^53.
  if (!std::isfinite(x) || std::abs(x) > 4.0e15 * step) {
    throw InvalidArgument(std::string(who) + ": input magnitude out of range");
  }
}

long long fine_index_mod(double value, const ScalarNestedPair& pair) {
  long long q = static_cast<long long>(std::floor(value / pair.fine_step() + 0.5));
  long long m = pair.codebook_size();
  long long idx = q % m;
  return idx < 0 ? idx + m : idx;
}

}  // namespace

ScalarNestedPair::ScalarNestedPair(double d, long long m)
    : d_(d), m_(m), fine_step_(std::sqrt(12.0 * d)), coarse_step_(m * fine_step_) {}

ScalarNestedPair ScalarNestedPair::from_codebook(double d, long long codebook_size) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw InvalidArgument("ScalarNestedPair: distortion must be positive and finite");
  }
  if (codebook_size < 1) {
    throw InvalidArgument("ScalarNestedPair: codebook size must be at least 1");
  }
  return ScalarNestedPair(d, codebook_size);
}

ScalarNestedPair ScalarNestedPair::from_rate(double d, double rate_bits) {
  if (!std::isfinite(rate_bits) || rate_bits < 0.0 || rate_bits > 60.0) {
    throw InvalidArgument("ScalarNestedPair: rate must lie in [0, 60] bits");
  }
  double m_real = std::exp2(rate_bits);
  long long m = std::llround(m_real);
  if (m < 1 || std::abs(m_real - static_cast<double>(m)) > 1e-9 * m_real) {
    throw InvalidArgument("ScalarNestedPair: 2^rate must be a positive integer, got rate " +
                          std::to_string(rate_bits));
  }
  return from_codebook(d, m);
}

double ScalarNestedPair::rate_bits() const { return std::log2(static_cast<double>(m_)); }

double quantize_fine(double x, const ScalarNestedPair& pair) {
  require_finite_input(x, pair.fine_step(), "quantize_fine");
  return pair.fine_step() * std::floor(x / pair.fine_step() + 0.5);
}

double mod_coarse(double x, const ScalarNestedPair& pair) {
  require_finite_input(x, pair.coarse_step(), "mod_coarse");
  const double cs = pair.coarse_step();
  double y = x - cs * std::floor(x / cs + 0.5);
  // Roundoff at the cell boundary can leave y an ulp outside; fold it back.
  const double half = 0.5 * cs;
  if (y >= half) y -= cs;
  if (y < -half) y += cs;
  return y;
}

long long encode(double x, double dither, const ScalarNestedPair& pair) {
  require_finite_input(x, pair.fine_step(), "encode");
  require_dither(dither, pair, "encode");
  return fine_index_mod(x + dither, pair);
}

std::vector<double> decode(const std::vector<long long>& indices,
                           const std::vector<double>& dithers, const IntegerCoeffMatrix& a,
                           const ScalarNestedPair& pair) {
  const int k = a.dim();
  if (static_cast<int>(indices.size()) != k || static_cast<int>(dithers.size()) != k) {
    throw InvalidArgument("decode: indices/dithers must match the coefficient dimension");
  }
  for (int i = 0; i < k; ++i) {
    if (indices[static_cast<std::size_t>(i)] < 0 ||
        indices[static_cast<std::size_t>(i)] >= pair.codebook_size()) {
      throw InvalidArgument("decode: index out of range at position " + std::to_string(i));
    }
    require_dither(dithers[static_cast<std::size_t>(i)], pair, "decode");
  }
  Vector xt(k);
  for (int i = 0; i < k; ++i) {
    xt(i) = mod_coarse(static_cast<double>(indices[static_cast<std::size_t>(i)]) *
                           pair.fine_step() -
                       dithers[static_cast<std::size_t>(i)],
                       pair);
  }
  Matrix ad = a.entries().cast<double>();
  Vector w = ad * xt;
  for (int i = 0; i < k; ++i) w(i) = mod_coarse(w(i), pair);
  Vector xhat = Eigen::PartialPivLU<Matrix>(ad).solve(w);
  return std::vector<double>(xhat.data(), xhat.data() + k);
}

long long modulo_adc_encode(double x, double dither, const ScalarNestedPair& pair) {
  if (pair.codebook_size() % 2 == 0) {
    throw EvenCodebook("modulo_adc_encode: codebook size must be odd, got " +
                       std::to_string(pair.codebook_size()));
  }
  require_finite_input(x, pair.fine_step(), "modulo_adc_encode");
  require_dither(dither, pair, "modulo_adc_encode");
  return fine_index_mod(mod_coarse(x + dither, pair), pair);
}

double theorem2_bound(int k, double delta_bits) {
  if (k < 1) throw InvalidArgument("theorem2_bound: k must be at least 1");
  if (!(delta_bits >= 0.0) || !std::isfinite(delta_bits)) {
    throw InvalidArgument("theorem2_bound: delta must be nonnegative and finite");
  }
  return std::min(1.0, 2.0 * k * std::exp(-1.5 * std::exp2(2.0 * delta_bits)));
}

std::uint64_t simulate_trial_seed(std::uint64_t seed, long long trial_index) {
  return mix_seed({seed, 0x6f6e6573686f74ull, static_cast<std::uint64_t>(trial_index)});
}

SimStats simulate(const CovarianceMatrix& kxx, double d, double rate_bits,
                  const std::optional<IntegerCoeffMatrix>& a, long long trials,
                  std::uint64_t seed, MinimaMethod method) {
  if (trials < 1) throw InvalidArgument("simulate: trials must be at least 1");
  ScalarNestedPair pair = ScalarNestedPair::from_rate(d, rate_bits);
  const int k = kxx.dim();
  IntegerCoeffMatrix coeffs = a.has_value() ? *a : r_if(kxx, d, method).coeffs;
  if (coeffs.dim() != k) throw InvalidArgument("simulate: coefficient dimension mismatch");

  Matrix l = cholesky_psd(kxx.entries());
  Matrix ad = coeffs.entries().cast<double>();
  Eigen::PartialPivLU<Matrix> lu(ad);
  const double overload_tol = 1e-9 * pair.coarse_step();

  // Neumaier-compensated per-source error moments.
  std::vector<double> mse_sum(k, 0.0), mse_c(k, 0.0), bias_sum(k, 0.0), bias_c(k, 0.0);
  auto comp_add = [](double& sum, double& comp, double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  };

  long long overloads = 0;
  Vector g(k), x(k), e(k), xt(k);
  std::vector<double> dithers(static_cast<std::size_t>(k));
  for (long long t = 0; t < trials; ++t) {
    RandomStream stream(simulate_trial_seed(seed, t));
    for (int i = 0; i < k; ++i) g(i) = stream.normal();
    x = l * g;
    for (int i = 0; i < k; ++i) {
      dithers[static_cast<std::size_t>(i)] = stream.uniform_symmetric(0.5 * pair.fine_step());
    }
    // Encoder side and its exact reconstruction values.
    for (int i = 0; i < k; ++i) {
      double dithered = x(i) + dithers[static_cast<std::size_t>(i)];
      double y = quantize_fine(dithered, pair);
      e(i) = y - dithered;  // quantization error, uniform on the fine cell
      xt(i) = mod_coarse(y - dithers[static_cast<std::size_t>(i)], pair);
    }
    // Decoder side.
    Vector w = ad * xt;
    bool overload = false;
    for (int i = 0; i < k; ++i) {
      w(i) = mod_coarse(w(i), pair);
      double w_true = ad.row(i).dot(x + e);
      if (std::abs(w(i) - w_true) > overload_tol) overload = true;
    }
    if (overload) {
      ++overloads;
      continue;
    }
    Vector xhat = lu.solve(w);
    for (int i = 0; i < k; ++i) {
      double err = xhat(i) - x(i);
      comp_add(mse_sum[static_cast<std::size_t>(i)], mse_c[static_cast<std::size_t>(i)],
               err * err);
      comp_add(bias_sum[static_cast<std::size_t>(i)], bias_c[static_cast<std::size_t>(i)], err);
    }
  }

  SimStats stats;
  stats.trials = trials;
  stats.overloads = overloads;
  stats.empirical_overload_rate =
      static_cast<double>(overloads) / static_cast<double>(trials);
  stats.mse.resize(static_cast<std::size_t>(k), 0.0);
  stats.bias.resize(static_cast<std::size_t>(k), 0.0);
  const long long clean = trials - overloads;
  if (clean > 0) {
    for (int i = 0; i < k; ++i) {
      stats.mse[static_cast<std::size_t>(i)] =
          (mse_sum[static_cast<std::size_t>(i)] + mse_c[static_cast<std::size_t>(i)]) /
          static_cast<double>(clean);
      stats.bias[static_cast<std::size_t>(i)] =
          (bias_sum[static_cast<std::size_t>(i)] + bias_c[static_cast<std::size_t>(i)]) /
          static_cast<double>(clean);
    }
  }
  return stats;
}

}  // namespace ifsc
