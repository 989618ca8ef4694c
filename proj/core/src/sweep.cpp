#include "ifsc/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ifsc/rng.hpp"

namespace ifsc {

namespace {

// Neumaier-compensated accumulator; one per statistic per chunk.
struct Acc {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double total() const { return sum + comp; }
};

struct MomentAcc {
  Acc first;
  Acc second;

  void add(double v) {
    first.add(v);
    second.add(v * v);
  }
};

SweepStat finalize(const Acc& sum, const Acc& sumsq, long long n) {
  SweepStat s;
  if (n <= 0) return s;
  double total = sum.total();
  s.mean = total / static_cast<double>(n);
  if (n > 1) {
    double var = (sumsq.total() - total * s.mean) / static_cast<double>(n - 1);
    s.se = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  return s;
}

constexpr long long kChunk = 1024;

// Runs fn(trial) -> array of values for each trial, chunked. Chunks may be
// computed on any thread, but partials are merged in chunk order, so the
// aggregate does not depend on the thread count.
template <int N, typename Fn>
std::array<MomentAcc, N> accumulate_trials(long long trials, Fn&& fn) {
  const long long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::array<MomentAcc, N>> partials(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](long long c) {
    std::array<MomentAcc, N> acc{};
    const long long begin = c * kChunk;
    const long long end = std::min(begin + kChunk, trials);
    for (long long t = begin; t < end; ++t) {
      std::array<double, N> vals = fn(t);
      for (int i = 0; i < N; ++i) acc[i].add(vals[i]);
    }
    return acc;
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned workers = std::min<unsigned>(hw == 0 ? 1 : hw, static_cast<unsigned>(chunks));
  if (workers <= 1) {
    for (long long c = 0; c < chunks; ++c) partials[static_cast<std::size_t>(c)] = run_chunk(c);
  } else {
    std::atomic<long long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          long long c = next.fetch_add(1);
          if (c >= chunks) return;
          try {
            partials[static_cast<std::size_t>(c)] = run_chunk(c);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Ordered merge: chunk c's partial is folded in before chunk c+1's.
  std::array<MomentAcc, N> merged{};
  for (const auto& part : partials) {
    for (int i = 0; i < N; ++i) {
      merged[i].first.add(part[i].first.total());
      merged[i].second.add(part[i].second.total());
    }
  }
  return merged;
}

template <int N>
std::array<SweepStat, N> stats_of(const std::array<MomentAcc, N>& acc, long long n) {
  std::array<SweepStat, N> out;
  for (int i = 0; i < N; ++i) out[i] = finalize(acc[i].first, acc[i].second, n);
  return out;
}

void require_sweep_args(int k, int m, long long trials) {
  if (k <= 0 || m <= 0) throw InvalidArgument("ergodic sweep: k and m must be positive");
  if (trials <= 0) throw InvalidArgument("ergodic sweep: trials must be positive");
}

}  // namespace

std::uint64_t sweep_trial_seed(std::uint64_t seed, int point_index, long long trial_index) {
  return mix_seed({seed, static_cast<std::uint64_t>(point_index),
                   static_cast<std::uint64_t>(trial_index)});
}

std::vector<RateSweepPoint> ergodic_rate_sweep(int k, int m, double snr,
                                               const std::vector<double>& d_grid,
                                               long long trials, std::uint64_t seed,
                                               MinimaMethod method) {
  require_sweep_args(k, m, trials);
  if (!(snr > 0.0)) throw InvalidArgument("ergodic_rate_sweep: snr must be positive");
  if (d_grid.empty()) throw InvalidArgument("ergodic_rate_sweep: empty d grid");

  std::vector<RateSweepPoint> out;
  out.reserve(d_grid.size());
  for (int p = 0; p < static_cast<int>(d_grid.size()); ++p) {
    const double d = d_grid[static_cast<std::size_t>(p)];
    auto acc = accumulate_trials<6>(trials, [&](long long t) {
      Matrix h = random_gaussian_matrix(k, m, sweep_trial_seed(seed, p, t));
      RateReport r = compute_rates(build_cov_relay(h, snr), d, method);
      return std::array<double, 6>{r.r_if_bits,
                                   r.r_naive_bits,
                                   r.r_bt_bits,
                                   r.r_if_bits - r.r_bt_bits,
                                   r.r_naive_bits - r.r_if_bits,
                                   r.r_naive_bits - r.r_bt_bits};
    });
    auto st = stats_of<6>(acc, trials);
    out.push_back(RateSweepPoint{d, st[0], st[1], st[2], st[3], st[4], st[5]});
  }
  return out;
}

namespace {

std::vector<RelaySweepPoint> relay_sweep(int k, int m, const std::vector<double>& grid,
                                         long long trials, std::uint64_t seed,
                                         MinimaMethod method, bool grid_is_snr_db,
                                         double fixed_snr, double fixed_r0) {
  require_sweep_args(k, m, trials);
  if (grid.empty()) throw InvalidArgument("ergodic relay sweep: empty grid");

  std::vector<RelaySweepPoint> out;
  out.reserve(grid.size());
  for (int p = 0; p < static_cast<int>(grid.size()); ++p) {
    const double x = grid[static_cast<std::size_t>(p)];
    const double snr = grid_is_snr_db ? std::pow(10.0, x / 10.0) : fixed_snr;
    const double r0 = grid_is_snr_db ? fixed_r0 : x;
    auto acc = accumulate_trials<5>(trials, [&](long long t) {
      Matrix h = random_gaussian_matrix(k, m, sweep_trial_seed(seed, p, t));
      RelayReport r = relay_rates(h, snr, r0, method);
      return std::array<double, 5>{r.sum_rate_if_bits, r.sum_rate_naive_bits,
                                   r.upper_bound_bits, r.d_if, r.d_naive};
    });
    auto st = stats_of<5>(acc, trials);
    out.push_back(RelaySweepPoint{x, st[0], st[1], st[2], st[3], st[4]});
  }
  return out;
}

}  // namespace

std::vector<RelaySweepPoint> ergodic_relay_sweep_r0(int k, int m, double snr,
                                                    const std::vector<double>& r0_grid,
                                                    long long trials, std::uint64_t seed,
                                                    MinimaMethod method) {
  if (!(snr > 0.0)) throw InvalidArgument("ergodic_relay_sweep_r0: snr must be positive");
  return relay_sweep(k, m, r0_grid, trials, seed, method, /*grid_is_snr_db=*/false, snr, 0.0);
}

std::vector<RelaySweepPoint> ergodic_relay_sweep_snr_db(int k, int m,
                                                        const std::vector<double>& snr_db_grid,
                                                        double r0, long long trials,
                                                        std::uint64_t seed, MinimaMethod method) {
  if (!(r0 > 0.0)) throw InvalidArgument("ergodic_relay_sweep_snr_db: r0 must be positive");
  return relay_sweep(k, m, snr_db_grid, trials, seed, method, /*grid_is_snr_db=*/true, 0.0, r0);
}

}  // namespace ifsc
