// Release acceptance checklist. Every criterion prints exactly one PASS/FAIL
// line; run with no arguments for the full list, or pass criterion numbers to
// run a subset (the ctest registration runs them one by one).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ifsc/lattice.hpp"
#include "ifsc/matrix.hpp"
#include "ifsc/oneshot.hpp"
#include "ifsc/rates.hpp"
#include "ifsc/rng.hpp"
#include "ifsc/sweep.hpp"

using namespace ifsc;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;
  int reported = 0;

  void expect(bool cond, const std::string& msg) {
    if (cond) return;
    ok = false;
    if (reported < 4) {
      if (!detail.empty()) detail += "; ";
      detail += msg;
    } else if (reported == 4) {
      detail += "; ...";
    }
    ++reported;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CovarianceMatrix wishart(int k, std::uint64_t seed) {
  Matrix g = random_gaussian_matrix(k, k, seed);
  return CovarianceMatrix(g * g.transpose() + 1e-9 * Matrix::Identity(k, k));
}

CovarianceMatrix corr2() {
  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  return CovarianceMatrix(m);
}

IntMatrix random_unimodular(int k, RandomStream& s) {
  IntMatrix b = IntMatrix::Identity(k, k);
  for (int step = 0; step < 3 * k; ++step) {
    int i = static_cast<int>(s.next_u64() % static_cast<std::uint64_t>(k));
    int j = static_cast<int>(s.next_u64() % static_cast<std::uint64_t>(k));
    long long q = static_cast<long long>(s.next_u64() % 3) - 1;
    if (i == j || q == 0) continue;
    b.row(i) += q * b.row(j);  // shear: determinant stays 1
  }
  return b;
}

// --- criterion 1: overload union bound value ------------------------------

bool criterion1(Checker& c) {
  double b = theorem2_bound(4, 2.0);
  c.expect(b > 2.9e-10 && b < 3.1e-10, "theorem2_bound(4, 2) = " + fmt(b));
  return c.ok;
}

// --- criterion 2: rate chain over a random ensemble ------------------------

bool criterion2(Checker& c) {
  const double d_grid[4] = {0.01, 0.1, 1.0, 10.0};
  for (int i = 0; i < 1000; ++i) {
    int k = 2 + i % 5;  // 2..6: enumeration through 5, LLL at 6
    CovarianceMatrix kxx = wishart(k, mix_seed({21, static_cast<std::uint64_t>(i)}));
    for (double d : d_grid) {
      RateReport r = compute_rates(kxx, d, MinimaMethod::automatic);
      c.expect(r.r_bt_bits <= r.r_if_bits + 1e-9,
               "r_bt > r_if at i=" + std::to_string(i) + " d=" + fmt(d));
      c.expect(r.r_if_bits <= r.r_naive_bits + 1e-9,
               "r_if > r_naive at i=" + std::to_string(i) + " d=" + fmt(d));
      if (!c.ok && c.reported > 8) return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 3: LLL search against the exact oracle -----------------------

bool criterion3(Checker& c) {
  const double d_grid[4] = {0.01, 0.1, 1.0, 10.0};
  int agree = 0;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    int k = 2 + i % 3;  // 2..4
    CovarianceMatrix kxx = wishart(k, mix_seed({31, static_cast<std::uint64_t>(i)}));
    double d = d_grid[i % 4];
    double exact = r_if(kxx, d, MinimaMethod::enumerate).rate_bits;
    double approx = r_if(kxx, d, MinimaMethod::lll).rate_bits;
    c.expect(approx >= exact - 1e-9,
             "LLL rate " + fmt(approx) + " below exact " + fmt(exact) + " at i=" +
                 std::to_string(i));
    if (std::abs(approx - exact) <= 1e-9) ++agree;

    // Per-minimum guarantee on the underlying lattice.
    Matrix m = Matrix::Identity(k, k) + kxx.entries() / d;
    LatticeBasis basis(cholesky(m).transpose());
    MinimaResult en = shortest_independent_vectors(basis, MinimaMethod::enumerate);
    MinimaResult ll = shortest_independent_vectors(basis, MinimaMethod::lll);
    double factor = std::pow(2.0, (k - 1) / 2.0) * (1.0 + 1e-9);
    for (int j = 0; j < k; ++j) {
      c.expect(ll.lengths[static_cast<std::size_t>(j)] <=
                   factor * en.lengths[static_cast<std::size_t>(j)],
               "minimum " + std::to_string(j) + " off by more than 2^((K-1)/2) at i=" +
                   std::to_string(i));
    }
    if (!c.ok && c.reported > 8) return c.ok;
  }
  c.expect(agree >= 950, "LLL matched enumeration on only " + std::to_string(agree) +
                             "/1000 instances");
  return c.ok;
}

// --- criterion 4: determinant vs successive minima --------------------------

bool criterion4(Checker& c) {
  for (int i = 0; i < 1000; ++i) {
    int n = i < 500 ? 3 : 4;
    Matrix g = random_gaussian_matrix(n, n, mix_seed({41, static_cast<std::uint64_t>(i)}));
    MinimaResult r = brute_force_minima(LatticeBasis(g));
    double prod = 1.0;
    for (double len : r.lengths) prod *= len;
    double det = std::abs(g.determinant());
    c.expect(det <= prod * (1.0 + 1e-9) + 1e-9,
             "|det| = " + fmt(det) + " exceeds minima product " + fmt(prod) + " at i=" +
                 std::to_string(i));
    if (!c.ok && c.reported > 8) return c.ok;
  }
  return c.ok;
}

// --- criterion 5: strongly correlated unit-determinant pair -----------------

bool criterion5(Checker& c) {
  IntMatrix b(2, 2);
  b << 1, 0, 1, 1;
  CovarianceMatrix kxx = build_cov_integer(b);
  const double d = 1e-6;
  RifResult rif = r_if(kxx, d, MinimaMethod::enumerate);
  double res_if = rif.rate_bits + 0.5 * std::log2(d);
  double res_bt = r_bt_bench(kxx, d) + 0.5 * std::log2(d);
  double gap = r_naive(kxx, d) - rif.rate_bits;
  c.expect(res_if >= 0.0 && res_if <= 0.01,
           "r_if + log2(d)/2 = " + fmt(res_if) + " outside [0, 0.01]");
  c.expect(res_bt >= 0.0 && res_bt <= 0.01,
           "r_bt + log2(d)/2 = " + fmt(res_bt) + " outside [0, 0.01]");
  c.expect(std::abs(gap - 0.5) <= 0.01, "r_naive - r_if = " + fmt(gap) + " not ~0.5");
  return c.ok;
}

// --- criterion 6: codec with six bits of headroom ---------------------------

bool criterion6(Checker& c) {
  CovarianceMatrix kxx = corr2();
  const double d = 0.1;
  double rate = std::ceil(r_if(kxx, d, MinimaMethod::enumerate).rate_bits) + 6.0;
  const long long trials = 100000;
  SimStats s = simulate(kxx, d, rate, std::nullopt, trials, 606);
  c.expect(s.overloads == 0, std::to_string(s.overloads) + " overloads at rate " + fmt(rate));
  for (std::size_t i = 0; i < s.mse.size(); ++i) {
    c.expect(std::abs(s.mse[i] - d) <= 0.03 * d,
             "mse_" + std::to_string(i + 1) + " = " + fmt(s.mse[i]) + " vs d = " + fmt(d));
    double bias_tol = 4.0 * std::sqrt(d / static_cast<double>(trials));
    c.expect(std::abs(s.bias[i]) <= bias_tol,
             "bias_" + std::to_string(i + 1) + " = " + fmt(s.bias[i]) + " beyond " +
                 fmt(bias_tol));
  }
  return c.ok;
}

// --- criterion 7: overload probability under the union bound ----------------

bool criterion7(Checker& c) {
  CovarianceMatrix kxx = corr2();
  const double rate = 3.0;  // codebook of 8
  const long long trials = 1000000;
  for (double delta : {0.5, 1.0}) {
    double d = invert_rate_for_distortion(kxx, rate - delta, RateScheme::integer_forcing,
                                          MinimaMethod::enumerate);
    SimStats s = simulate(kxx, d, rate, std::nullopt, trials, 707);
    double bound = theorem2_bound(kxx.dim(), delta);
    double slack = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
    c.expect(s.empirical_overload_rate <= bound + slack,
             "delta = " + fmt(delta) + ": empirical " + fmt(s.empirical_overload_rate) +
                 " above bound " + fmt(bound));
  }
  return c.ok;
}

// --- criterion 8: fold/quantize exchange for odd codebooks ------------------

bool criterion8(Checker& c) {
  RandomStream s(808);
  for (long long m : {3LL, 5LL, 7LL}) {
    ScalarNestedPair pair = ScalarNestedPair::from_codebook(0.02, m);
    long long mismatches = 0;
    for (int i = 0; i < 100000; ++i) {
      double x = s.uniform_symmetric(3.0 * pair.coarse_step());
      double u = s.uniform_symmetric(0.5 * pair.fine_step());
      if (modulo_adc_encode(x, u, pair) != encode(x, u, pair)) ++mismatches;
    }
    c.expect(mismatches == 0,
             "m = " + std::to_string(m) + ": " + std::to_string(mismatches) + " mismatches");
  }
  return c.ok;
}

// --- criterion 9: ergodic separations and scaling ----------------------------

bool criterion9(Checker& c) {
  auto check_point = [&](const RateSweepPoint& p, const std::string& tag) {
    c.expect(p.r_bt.mean < p.r_if.mean, tag + ": r_bt not below r_if");
    c.expect(p.r_if.mean < p.r_naive.mean, tag + ": r_if not below r_naive");
    c.expect(p.gap_if_bt.mean > 3.0 * p.gap_if_bt.se,
             tag + ": if-bt gap " + fmt(p.gap_if_bt.mean) + " within 3 se " +
                 fmt(p.gap_if_bt.se));
    c.expect(p.gap_naive_if.mean > 3.0 * p.gap_naive_if.se,
             tag + ": naive-if gap " + fmt(p.gap_naive_if.mean) + " within 3 se " +
                 fmt(p.gap_naive_if.se));
  };
  auto four = ergodic_rate_sweep(4, 4, 100.0, {0.1}, 200, 909);
  auto eight = ergodic_rate_sweep(8, 2, 100.0, {0.1}, 200, 909);
  check_point(four[0], "K=4,M=4");
  check_point(eight[0], "K=8,M=2");
  double grow = eight[0].gap_naive_bt.mean - four[0].gap_naive_bt.mean;
  double grow_se = std::sqrt(eight[0].gap_naive_bt.se * eight[0].gap_naive_bt.se +
                             four[0].gap_naive_bt.se * four[0].gap_naive_bt.se);
  c.expect(grow > 3.0 * grow_se,
           "naive-bt gap did not widen: K=8 " + fmt(eight[0].gap_naive_bt.mean) + " vs K=4 " +
               fmt(four[0].gap_naive_bt.mean));
  return c.ok;
}

// --- criterion 10: relay ordering and saturation -----------------------------

bool criterion10(Checker& c) {
  const std::vector<double> grid{0.0, 5.0, 10.0, 15.0, 20.0, 25.0};
  const int k = 4;
  for (double r0 : {2.0, 3.0}) {
    auto pts = ergodic_relay_sweep_snr_db(k, 4, grid, r0, 100, 11);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      std::string tag = "r0=" + fmt(r0) + " snr=" + fmt(p.x) + "dB";
      c.expect(p.sum_naive.mean <= p.sum_if.mean + 1e-9, tag + ": naive above if");
      c.expect(p.sum_if.mean <= p.upper_bound.mean + 1e-9, tag + ": if above the bound");
      if (i > 0) {
        c.expect(pts[i].sum_if.mean >= pts[i - 1].sum_if.mean - 1e-9,
                 tag + ": sum rate decreased along the sweep");
      }
    }
    // At the top of the sweep the k*r0 side of the bound is active and the
    // achieved sum rate has flattened against it.
    const auto& top = pts.back();
    double cap = k * r0;
    c.expect(std::abs(top.upper_bound.mean - cap) <= 1e-9,
             "r0=" + fmt(r0) + ": bound " + fmt(top.upper_bound.mean) + " != k*r0 " +
                 fmt(cap));
    c.expect(cap - top.sum_if.mean <= 2.5,
             "r0=" + fmt(r0) + ": sum rate " + fmt(top.sum_if.mean) +
                 " saturates more than 2.5 bits under k*r0 = " + fmt(cap));
    c.expect(top.sum_if.mean - pts.front().sum_if.mean >= 1.0,
             "r0=" + fmt(r0) + ": sum rate barely grew across the sweep");
  }
  return c.ok;
}

// --- criterion 11: jscc distortions ------------------------------------------

bool criterion11(Checker& c) {
  for (int i = 0; i < 500; ++i) {
    RandomStream s(mix_seed({111, static_cast<std::uint64_t>(i)}));
    int k = 2 + i % 3;
    CovarianceMatrix kxx =
        (i % 2 == 0) ? wishart(k, mix_seed({112, static_cast<std::uint64_t>(i)}))
                     : build_cov_integer(random_unimodular(k, s));
    double p = 0.5 + 4.5 * s.uniform01();
    double n_nom = 0.1 + 1.9 * s.uniform01();

    JsccReport at_nom = jscc_distortions(p, n_nom, n_nom, kxx);
    JsccReport mid = jscc_distortions(p, 0.7 * n_nom, n_nom, kxx);
    JsccReport low = jscc_distortions(p, 0.4 * n_nom, n_nom, kxx);
    c.expect(at_nom.d_if <= at_nom.d_naive * (1.0 + 1e-7),
             "i=" + std::to_string(i) + ": d_if " + fmt(at_nom.d_if) + " above d_naive " +
                 fmt(at_nom.d_naive) + " at design noise");
    c.expect(low.d_if < mid.d_if && mid.d_if < at_nom.d_if,
             "i=" + std::to_string(i) + ": d_if not strictly improving as noise drops");

    if (i % 10 == 0) {
      CovarianceMatrix eye{Matrix::Identity(k, k)};
      double beta = jscc_beta_opt(p, n_nom, eye);
      double closed = p / std::sqrt(n_nom + p);
      c.expect(std::abs(beta - closed) <= 1e-6 * closed,
               "i=" + std::to_string(i) + ": white beta " + fmt(beta) + " vs closed form " +
                   fmt(closed));
    }
    if (!c.ok && c.reported > 8) return c.ok;
  }
  return c.ok;
}

// --- criterion 12: byte-identical CLI runs -----------------------------------

std::optional<std::string> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion12(Checker& c) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ifsc_acceptance_cli";
  fs::create_directories(dir);

  auto run_cli = [&](const std::string& args, const fs::path& out) {
    std::string cmd = std::string("\"") + IFSC_CLI_PATH + "\" " + args + " --out \"" +
                      out.string() + "\" >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };

  struct Case {
    const char* name;
    std::string args;  // without --seed/--out; both runs write the same path
  };
  std::vector<Case> cases{
      {"ergodic", "ergodic --k 3 --m 3 --snr_db 10 --d_grid 0.1,1 --trials 20"},
      {"oneshot",
       "oneshot --kxx identity --dim 2 --d 0.05 --rate 5 --trials 200 --format json"},
      {"relay", "relay --k 2 --m 2 --r0 2 --snr_db_grid 0,10 --trials 10"},
  };
  for (const Case& cs : cases) {
    fs::path out = dir / (std::string(cs.name) + ".txt");
    int ra = run_cli(cs.args + " --seed 5", out);
    auto sa = slurp(out);
    int rb = run_cli(cs.args + " --seed 5", out);
    auto sb = slurp(out);
    int rd = run_cli(cs.args + " --seed 6", out);
    auto sd = slurp(out);
    c.expect(ra == 0 && rb == 0 && rd == 0,
             std::string(cs.name) + ": CLI exited nonzero");
    c.expect(sa.has_value() && sb.has_value() && sd.has_value(),
             std::string(cs.name) + ": missing output file");
    if (sa && sb) {
      c.expect(*sa == *sb, std::string(cs.name) + ": repeated run differs");
      c.expect(!sa->empty(), std::string(cs.name) + ": empty output");
    }
    if (sa && sd) c.expect(*sa != *sd, std::string(cs.name) + ": seed is ignored");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return c.ok;
}

struct Criterion {
  int id;
  const char* summary;
  std::function<bool(Checker&)> fn;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "overload union bound value at k=4, delta=2", criterion1},
      {2, "r_bt <= r_if <= r_naive over 1000 random covariances", criterion2},
      {3, "LLL coefficient search tracks the exact oracle", criterion3},
      {4, "lattice determinant bounded by the product of the minima", criterion4},
      {5, "correlated unit-determinant pair: rate collapse and half-bit gap", criterion5},
      {6, "codec with 6 bits of margin: clean, on-target, unbiased", criterion6},
      {7, "empirical overload rate under the union bound at delta 0.5 and 1.0", criterion7},
      {8, "fold/quantize exchange for odd codebooks", criterion8},
      {9, "ergodic gaps exceed 3 standard errors and widen with more sources", criterion9},
      {10, "relay sum rate ordered below the bound and saturating near k*r0", criterion10},
      {11, "jscc distortions: dominance, monotonicity, white closed form", criterion11},
      {12, "CLI output is byte-identical for a fixed seed", criterion12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  bool all_ok = true;
  for (const Criterion& cr : criteria()) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), cr.id) == wanted.end()) {
      continue;
    }
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string aborted;
    try {
      ok = cr.fn(c);
    } catch (const std::exception& e) {
      ok = false;
      aborted = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string line = (ok ? "PASS" : "FAIL");
    line += " criterion " + std::to_string(cr.id) + " (" + fmt(secs) + " s): " + cr.summary;
    if (!ok) {
      line += " -- " + (aborted.empty() ? c.detail : aborted);
    }
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
