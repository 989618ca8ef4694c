#include "ifsc/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ifsc {

namespace {

void require_positive(double v, const char* who, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(who) + ": " + name + " must be positive and finite");
  }
}

// I + K_xx / d, the matrix whose quadratic forms set the rate.
Matrix rate_kernel(const CovarianceMatrix& kxx, double d) {
  const int n = kxx.dim();
  return Matrix(kxx.entries() / d + Matrix::Identity(n, n));
}

double max_quadform(const Matrix& m, const IntegerCoeffMatrix& a) {
  double worst = 0.0;
  for (int k = 0; k < a.dim(); ++k) {
    Vector ak = a.entries().row(k).transpose().cast<double>();
    worst = std::max(worst, double(ak.dot(m * ak)));
  }
  return worst;
}

}  // namespace

double r_if_given_coeffs(const CovarianceMatrix& kxx, double d, const IntegerCoeffMatrix& a) {
  require_positive(d, "r_if_given_coeffs", "d");
  if (a.dim() != kxx.dim()) {
    throw InvalidArgument("r_if_given_coeffs: coefficient matrix dimension mismatch");
  }
  return 0.5 * std::log2(max_quadform(rate_kernel(kxx, d), a));
}

RifResult r_if(const CovarianceMatrix& kxx, double d, MinimaMethod method) {
  require_positive(d, "r_if", "d");
  const int n = kxx.dim();
  Matrix m = rate_kernel(kxx, d);
  Matrix f = cholesky(m);  // m = f f^T, so a^T m a = ||f^T a||^2
  LatticeBasis lat(Matrix(f.transpose()));
  MinimaResult minima = shortest_independent_vectors(lat, method);
  double lambda_max = minima.lengths.back();
  double obj = lambda_max * lambda_max;
  IntegerCoeffMatrix coeffs = minima.coeffs;
  if (!minima.exact) {
    // LLL is an approximation; A = I is always feasible, so never do worse.
    double identity_obj = m.diagonal().maxCoeff();
    if (identity_obj < obj) {
      obj = identity_obj;
      coeffs = IntegerCoeffMatrix(IntMatrix(IntMatrix::Identity(n, n)));
    }
  }
  return RifResult{0.5 * std::log2(obj), std::move(coeffs), minima.exact};
}

double r_naive(const CovarianceMatrix& kxx, double d) {
  require_positive(d, "r_naive", "d");
  double worst = 0.0;
  for (int k = 0; k < kxx.dim(); ++k) {
    worst = std::max(worst, 0.5 * std::log2(1.0 + kxx(k, k) / d));
  }
  return worst;
}

double r_bt_bench(const CovarianceMatrix& kxx, double d) {
  require_positive(d, "r_bt_bench", "d");
  return log_det2(rate_kernel(kxx, d)) / (2.0 * kxx.dim());
}

RateReport compute_rates(const CovarianceMatrix& kxx, double d, MinimaMethod method) {
  RifResult rif = r_if(kxx, d, method);
  return RateReport{d,
                    rif.rate_bits,
                    r_naive(kxx, d),
                    r_bt_bench(kxx, d),
                    std::move(rif.coeffs),
                    rif.exact};
}

double invert_rate_for_distortion(const CovarianceMatrix& kxx, double target_rate_bits,
                                  RateScheme scheme, MinimaMethod method) {
  require_positive(target_rate_bits, "invert_rate_for_distortion", "target rate");
  auto rate_at = [&](double d) {
    return scheme == RateScheme::integer_forcing ? r_if(kxx, d, method).rate_bits
                                                 : r_naive(kxx, d);
  };
  const double trace = kxx.trace();
  const double d_lo = 1e-12 * trace;
  const double d_hi = 1e6 * trace;
  const double r_at_lo = rate_at(d_lo);
  const double r_at_hi = rate_at(d_hi);
  // Rates decrease in d, so the bracket must satisfy r(d_hi) <= target <= r(d_lo).
  if (target_rate_bits > r_at_lo + 1e-9 || target_rate_bits < r_at_hi - 1e-9) {
    throw Unachievable("invert_rate_for_distortion: target " + std::to_string(target_rate_bits) +
                       " bits outside achievable range [" + std::to_string(r_at_hi) + ", " +
                       std::to_string(r_at_lo) + "]");
  }
  double lo = std::log(d_lo);
  double hi = std::log(d_hi);
  const double tol = 1e-9 * (hi - lo);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (rate_at(std::exp(mid)) > target_rate_bits) {
      lo = mid;  // rate too high -> need more distortion
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

RelayReport relay_rates(const Matrix& h, double snr, double r0, MinimaMethod method) {
  require_positive(snr, "relay_rates", "snr");
  require_positive(r0, "relay_rates", "r0");
  CovarianceMatrix kxx = build_cov_relay(h, snr);
  const int k = kxx.dim();
  Matrix hht = h * h.transpose();
  hht = 0.5 * (hht + Matrix(hht.transpose()));

  double d_if = invert_rate_for_distortion(kxx, r0, RateScheme::integer_forcing, method);
  double d_naive = invert_rate_for_distortion(kxx, r0, RateScheme::naive, method);

  auto sum_rate = [&](double d) {
    Matrix m = Matrix::Identity(k, k) + (snr / (1.0 + d)) * hht;
    return 0.5 * log_det2(m);
  };
  double ub = std::min(
      0.5 * log_det2(Matrix(Matrix::Identity(k, k) + snr * hht)), k * r0);
  return RelayReport{r0, d_if, d_naive, sum_rate(d_if), sum_rate(d_naive), ub};
}

double jscc_beta_opt(double p, double n_nom, const CovarianceMatrix& kxx, MinimaMethod method) {
  require_positive(p, "jscc_beta_opt", "p");
  require_positive(n_nom, "jscc_beta_opt", "n_nom");
  const int n = kxx.dim();
  const double c = n_nom * p / (n_nom + p);  // post-equalization noise power
  Matrix eye = Matrix::Identity(n, n);

  auto objective = [&](double beta) {
    Matrix m = beta * beta * kxx.entries() + c * eye;
    m = 0.5 * (m + Matrix(m.transpose()));
    Matrix f = cholesky(m);
    MinimaResult minima = shortest_independent_vectors(LatticeBasis(Matrix(f.transpose())), method);
    double obj = minima.lengths.back() * minima.lengths.back();
    if (!minima.exact) obj = std::min(obj, m.diagonal().maxCoeff());
    return obj;
  };

  // c < p always, so beta = 0 is strictly feasible and the objective grows
  // without bound; double until infeasible, then bisect.
  double hi = 1.0;
  int doublings = 0;
  while (objective(hi) < p) {
    hi *= 2.0;
    if (++doublings > 400) {
      throw Unachievable("jscc_beta_opt: power constraint never binds");
    }
  }
  double lo = 0.0;
  const double tol = 1e-9 * hi;
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (objective(mid) <= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

JsccReport jscc_distortions(double p, double n, double n_nom, const CovarianceMatrix& kxx,
                            MinimaMethod method) {
  require_positive(p, "jscc_distortions", "p");
  require_positive(n, "jscc_distortions", "n");
  require_positive(n_nom, "jscc_distortions", "n_nom");
  if (n > n_nom * (1.0 + 1e-12)) {
    throw NoiseAboveNominal("jscc_distortions: actual noise " + std::to_string(n) +
                            " exceeds nominal " + std::to_string(n_nom));
  }
  double beta = jscc_beta_opt(p, n_nom, kxx, method);
  double eff = n * p / (n + p);
  double d_if = eff / (beta * beta);
  double d_naive = (n / p) * kxx.entries().diagonal().maxCoeff();
  return JsccReport{p, n, n_nom, beta, d_if, d_naive};
}

}  // namespace ifsc
