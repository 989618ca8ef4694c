#include "cli/run.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ifsc/oneshot.hpp"
#include "ifsc/rates.hpp"
#include "ifsc/sweep.hpp"
#include "ifsc/version.hpp"

namespace ifsc::cli {

namespace {

ResultTable table_for(const ExperimentConfig& cfg) {
  ResultTable t;
  t.metadata["argv"] = canonical_command_line(cfg);
  t.metadata["command"] = command_name(cfg.command);
  t.metadata["seed"] = std::to_string(cfg.seed);
  t.metadata["version"] = std::string(kVersion);
  return t;
}

void push_stat_columns(std::vector<std::string>& schema, const char* base) {
  schema.push_back(std::string(base) + "_mean");
  schema.push_back(std::string(base) + "_se");
}

ResultTable run_rates(const ExperimentConfig& cfg) {
  CovarianceMatrix kxx = build_kxx(cfg);
  const int k = kxx.dim();
  ResultTable t = table_for(cfg);
  t.schema = {"d", "r_if", "r_naive", "r_bt", "exact"};
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      t.schema.push_back("a_" + std::to_string(i) + "_" + std::to_string(j));
  for (double d : cfg.d_grid) {
    RateReport r = compute_rates(kxx, d, cfg.method);
    std::vector<double> row{d, r.r_if_bits, r.r_naive_bits, r.r_bt_bits,
                            r.exact ? 1.0 : 0.0};
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) row.push_back(static_cast<double>(r.coeffs(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ResultTable run_ergodic(const ExperimentConfig& cfg) {
  double snr = std::pow(10.0, cfg.snr_db / 10.0);
  auto points = ergodic_rate_sweep(cfg.k, cfg.m, snr, cfg.d_grid, cfg.trials, cfg.seed,
                                   cfg.method);
  ResultTable t = table_for(cfg);
  t.schema = {"d"};
  for (const char* base :
       {"r_if", "r_naive", "r_bt", "gap_if_bt", "gap_naive_if", "gap_naive_bt"}) {
    push_stat_columns(t.schema, base);
  }
  t.schema.push_back("trials");
  for (const RateSweepPoint& p : points) {
    t.rows.push_back({p.d, p.r_if.mean, p.r_if.se, p.r_naive.mean, p.r_naive.se, p.r_bt.mean,
                      p.r_bt.se, p.gap_if_bt.mean, p.gap_if_bt.se, p.gap_naive_if.mean,
                      p.gap_naive_if.se, p.gap_naive_bt.mean, p.gap_naive_bt.se,
                      static_cast<double>(cfg.trials)});
  }
  return t;
}

ResultTable run_oneshot(const ExperimentConfig& cfg) {
  CovarianceMatrix kxx = build_kxx(cfg);
  const int k = kxx.dim();
  std::optional<IntegerCoeffMatrix> coeffs;
  if (!cfg.a_file.empty()) {
    coeffs.emplace(read_integer_matrix_file(cfg.a_file, "coefficient matrix"));
  } else {
    coeffs.emplace(r_if(kxx, cfg.d, cfg.method).coeffs);
  }
  SimStats stats = simulate(kxx, cfg.d, cfg.rate_bits, coeffs, cfg.trials, cfg.seed,
                            cfg.method);
  // Margin between the operating rate and the rate the chosen coefficients
  // need; the overload bound only applies when it is nonnegative.
  double delta = cfg.rate_bits - r_if_given_coeffs(kxx, cfg.d, *coeffs);
  double bound = delta >= 0.0 ? theorem2_bound(k, delta) : 1.0;

  ResultTable t = table_for(cfg);
  t.schema = {"d", "rate", "trials", "overloads", "overload_rate", "delta_bits", "bound"};
  for (int i = 1; i <= k; ++i) t.schema.push_back("mse_" + std::to_string(i));
  for (int i = 1; i <= k; ++i) t.schema.push_back("bias_" + std::to_string(i));
  std::vector<double> row{cfg.d,
                          cfg.rate_bits,
                          static_cast<double>(stats.trials),
                          static_cast<double>(stats.overloads),
                          stats.empirical_overload_rate,
                          delta,
                          bound};
  for (double v : stats.mse) row.push_back(v);
  for (double v : stats.bias) row.push_back(v);
  t.rows.push_back(std::move(row));
  return t;
}

ResultTable run_relay(const ExperimentConfig& cfg) {
  auto points = ergodic_relay_sweep_snr_db(cfg.k, cfg.m, cfg.snr_db_grid, cfg.r0, cfg.trials,
                                           cfg.seed, cfg.method);
  ResultTable t = table_for(cfg);
  t.schema = {"snr_db"};
  for (const char* base : {"sum_if", "sum_naive", "upper_bound", "d_if", "d_naive"}) {
    push_stat_columns(t.schema, base);
  }
  t.schema.push_back("trials");
  for (const RelaySweepPoint& p : points) {
    t.rows.push_back({p.x, p.sum_if.mean, p.sum_if.se, p.sum_naive.mean, p.sum_naive.se,
                      p.upper_bound.mean, p.upper_bound.se, p.d_if.mean, p.d_if.se,
                      p.d_naive.mean, p.d_naive.se, static_cast<double>(cfg.trials)});
  }
  return t;
}

ResultTable run_jscc(const ExperimentConfig& cfg) {
  CovarianceMatrix kxx = build_kxx(cfg);
  JsccReport r = jscc_distortions(cfg.p, cfg.n, cfg.n_nom, kxx, cfg.method);
  ResultTable t = table_for(cfg);
  t.schema = {"p", "n", "n_nom", "beta_opt", "d_if", "d_naive"};
  t.rows.push_back({r.p, r.n, r.n_nom, r.beta_opt, r.d_if, r.d_naive});
  return t;
}

ResultTable run_reduce(const ExperimentConfig& cfg) {
  LatticeBasis basis(read_square_matrix_file(cfg.basis_file, "lattice basis"));
  MinimaResult minima = shortest_independent_vectors(basis, cfg.method);
  const int k = basis.dim();
  ResultTable t = table_for(cfg);
  t.schema = {"k", "length", "exact"};
  for (int j = 1; j <= k; ++j) t.schema.push_back("a_" + std::to_string(j));
  for (int i = 0; i < k; ++i) {
    std::vector<double> row{static_cast<double>(i + 1), minima.lengths[static_cast<std::size_t>(i)],
                            minima.exact ? 1.0 : 0.0};
    for (int j = 0; j < k; ++j) row.push_back(static_cast<double>(minima.coeffs(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

ResultTable run(const ExperimentConfig& cfg) {
  switch (cfg.command) {
    case Command::rates: return run_rates(cfg);
    case Command::ergodic: return run_ergodic(cfg);
    case Command::oneshot: return run_oneshot(cfg);
    case Command::relay: return run_relay(cfg);
    case Command::jscc: return run_jscc(cfg);
    case Command::reduce: return run_reduce(cfg);
  }
  throw ConfigError("run: unknown command");
}

}  // namespace ifsc::cli
