#pragma once

#include <cstdint>
#include <vector>

#include "ifsc/rates.hpp"

namespace ifsc {

struct SweepStat {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

// Ergodic rate comparison: average compute_rates over random K x M channel
// draws H with i.i.d. N(0,1) entries and source covariance snr * H H^T + I.
struct RateSweepPoint {
  double d;
  SweepStat r_if;
  SweepStat r_naive;
  SweepStat r_bt;
  SweepStat gap_if_bt;      // r_if - r_bt, paired per draw
  SweepStat gap_naive_if;   // r_naive - r_if, paired per draw
  SweepStat gap_naive_bt;   // r_naive - r_bt, paired per draw
};

// Every (point, trial) runs on its own substream (see sweep_trial_seed), and
// chunk partials are merged in a fixed order with compensated summation, so
// results are bit-identical regardless of how trials are spread over threads.
std::vector<RateSweepPoint> ergodic_rate_sweep(int k, int m, double snr,
                                               const std::vector<double>& d_grid,
                                               long long trials, std::uint64_t seed,
                                               MinimaMethod method = MinimaMethod::automatic);

struct RelaySweepPoint {
  double x;  // grid coordinate: r0 in bits, or snr in dB
  SweepStat sum_if;
  SweepStat sum_naive;
  SweepStat upper_bound;
  SweepStat d_if;
  SweepStat d_naive;
};

std::vector<RelaySweepPoint> ergodic_relay_sweep_r0(int k, int m, double snr,
                                                    const std::vector<double>& r0_grid,
                                                    long long trials, std::uint64_t seed,
                                                    MinimaMethod method = MinimaMethod::lll);

std::vector<RelaySweepPoint> ergodic_relay_sweep_snr_db(int k, int m,
                                                        const std::vector<double>& snr_db_grid,
                                                        double r0, long long trials,
                                                        std::uint64_t seed,
                                                        MinimaMethod method = MinimaMethod::lll);

// Substream seed of one (point, trial) cell. Part of the reproducibility
// contract: changing trial counts or thread layout never changes the draws
// of other cells.
std::uint64_t sweep_trial_seed(std::uint64_t seed, int point_index, long long trial_index);

}  // namespace ifsc
