#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli/table.hpp"
#include "ifsc/errors.hpp"
#include "ifsc/oneshot.hpp"
#include "ifsc/version.hpp"

namespace ifsc::cli {

namespace {

MinimaMethod method_from_string(const std::string& s) {
  if (s == "lll") return MinimaMethod::lll;
  if (s == "enumerate") return MinimaMethod::enumerate;
  if (s == "auto") return MinimaMethod::automatic;
  throw ConfigError("--method must be one of lll, enumerate, auto");
}

KxxSource kxx_from_string(const std::string& s) {
  if (s == "identity") return KxxSource::identity;
  if (s == "file") return KxxSource::file;
  if (s == "integer") return KxxSource::integer;
  if (s == "relay") return KxxSource::relay;
  throw ConfigError("--kxx must be one of identity, file, integer, relay");
}

struct Issues {
  std::vector<std::string> list;

  void add(const std::string& msg) { list.push_back(msg); }

  void require_positive(double v, bool set, const char* flag) {
    if (!set) {
      add(std::string(flag) + " is required");
    } else if (!(v > 0.0) || !std::isfinite(v)) {
      add(std::string(flag) + " must be positive and finite");
    }
  }
};

void validate_kxx_source(const ExperimentConfig& cfg, Issues& issues) {
  switch (cfg.kxx) {
    case KxxSource::identity:
      if (cfg.dim < 1) issues.add("--dim (>= 1) is required with --kxx identity");
      break;
    case KxxSource::file:
      if (cfg.kxx_file.empty()) issues.add("--kxx_file is required with --kxx file");
      break;
    case KxxSource::integer:
      if (cfg.b_file.empty()) issues.add("--b_file is required with --kxx integer");
      break;
    case KxxSource::relay:
      if (cfg.h_file.empty()) issues.add("--h_file is required with --kxx relay");
      if (!cfg.snr_db_set) issues.add("--snr_db is required with --kxx relay");
      break;
  }
}

// Exactly one of --d / --d_grid; the resolved grid lands in cfg.d_grid.
void validate_d_grid(ExperimentConfig& cfg, Issues& issues) {
  const bool has_grid = !cfg.d_grid.empty();
  if (cfg.d_set && has_grid) {
    issues.add("--d and --d_grid are mutually exclusive");
    return;
  }
  if (!cfg.d_set && !has_grid) {
    issues.add("--d or --d_grid is required");
    return;
  }
  if (cfg.d_set) cfg.d_grid = {cfg.d};
  for (double v : cfg.d_grid) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      issues.add("distortion values must be positive and finite");
      break;
    }
  }
}

void validate_channel_dims(const ExperimentConfig& cfg, Issues& issues) {
  if (cfg.k < 1) issues.add("--k (>= 1) is required");
  if (cfg.m < 1) issues.add("--m (>= 1) is required");
}

void resolve_trials(ExperimentConfig& cfg, bool trials_set, long long fallback,
                    Issues& issues) {
  if (!trials_set) {
    cfg.trials = fallback;
  } else if (cfg.trials < 1) {
    issues.add("--trials must be at least 1");
  }
}

void validate(ExperimentConfig& cfg, bool trials_set, Issues& issues) {
  switch (cfg.command) {
    case Command::rates:
      validate_kxx_source(cfg, issues);
      validate_d_grid(cfg, issues);
      break;
    case Command::ergodic:
      validate_channel_dims(cfg, issues);
      if (!cfg.snr_db_set) issues.add("--snr_db is required");
      validate_d_grid(cfg, issues);
      resolve_trials(cfg, trials_set, 200, issues);
      break;
    case Command::oneshot:
      validate_kxx_source(cfg, issues);
      issues.require_positive(cfg.d, cfg.d_set, "--d");
      if (!cfg.rate_set) {
        issues.add("--rate is required");
      } else {
        try {
          ScalarNestedPair::from_rate(cfg.d_set && cfg.d > 0.0 ? cfg.d : 1.0, cfg.rate_bits);
        } catch (const InvalidArgument& e) {
          issues.add(std::string("--rate: ") + e.what());
        }
      }
      resolve_trials(cfg, trials_set, 100000, issues);
      break;
    case Command::relay:
      validate_channel_dims(cfg, issues);
      issues.require_positive(cfg.r0, cfg.r0_set, "--r0");
      if (cfg.snr_db_grid.empty()) {
        issues.add("--snr_db_grid is required");
      } else {
        for (double v : cfg.snr_db_grid) {
          if (!std::isfinite(v)) {
            issues.add("--snr_db_grid values must be finite");
            break;
          }
        }
      }
      resolve_trials(cfg, trials_set, 100, issues);
      break;
    case Command::jscc:
      validate_kxx_source(cfg, issues);
      issues.require_positive(cfg.p, cfg.p_set, "--p");
      issues.require_positive(cfg.n, cfg.n_set, "--n");
      issues.require_positive(cfg.n_nom, cfg.n_nom_set, "--n_nom");
      if (cfg.n_set && cfg.n_nom_set && cfg.n > cfg.n_nom) {
        issues.add("--n must not exceed --n_nom (system designed for nominal noise)");
      }
      break;
    case Command::reduce:
      if (cfg.basis_file.empty()) issues.add("--basis_file is required");
      break;
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// CLI11 only processes config files attached to the root command, so the
// per-subcommand --config is a plain option and the merge happens here: file
// values fill exactly those options the command line left untouched. Returns
// the keys actually taken from the file.
std::vector<std::string> apply_config_file(CLI::App* active, const std::string& path) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI{}.from_file(path);
  } catch (const CLI::FileError& e) {
    throw IoError(std::string("config file: ") + e.what());
  }
  std::vector<std::string> filled;
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty()) {
      throw ConfigError("config file: sections are not supported, got '" + item.fullname() +
                        "'");
    }
    CLI::Option* opt = active->get_option_no_throw("--" + item.name);
    if (opt == nullptr || !opt->get_configurable()) {
      throw ConfigError("config file: unknown key '" + item.name + "' for command '" +
                        active->get_name() + "'");
    }
    if (opt->count() > 0) continue;  // explicit flags win
    try {
      for (const std::string& v : item.inputs) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config file: key '" + item.name + "': " + e.what());
    }
    filled.push_back(item.name);
  }
  return filled;
}

}  // namespace

ExperimentConfig parse_config(int argc, const char* const* argv) {
  ExperimentConfig cfg;
  std::string method_str = "auto";
  std::string kxx_str = "identity";
  std::string config_path;

  CLI::App app{"integer-forcing source coding experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (default 1)");
    sub->add_option("--method", method_str, "coefficient search: lll, enumerate, auto")
        ->check(CLI::IsMember({"lll", "enumerate", "auto"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", config_path, "read defaults from an INI file (flags win)")
        ->configurable(false);
  };
  auto add_kxx = [&](CLI::App* sub) {
    sub->add_option("--kxx", kxx_str, "covariance source: identity, file, integer, relay")
        ->check(CLI::IsMember({"identity", "file", "integer", "relay"}));
    sub->add_option("--dim", cfg.dim, "source count for --kxx identity");
    sub->add_option("--kxx_file", cfg.kxx_file, "covariance file for --kxx file");
    sub->add_option("--b_file", cfg.b_file, "unimodular integer matrix for --kxx integer");
    sub->add_option("--h_file", cfg.h_file, "channel matrix for --kxx relay");
    sub->add_option("--snr_db", cfg.snr_db, "snr in dB for --kxx relay");
  };

  CLI::App* rates = app.add_subcommand("rates", "rate comparison for a fixed covariance");
  add_common(rates);
  add_kxx(rates);
  rates->add_option("--d", cfg.d, "distortion");
  rates->add_option("--d_grid", cfg.d_grid, "comma-separated distortion grid")->delimiter(',');

  CLI::App* ergodic =
      app.add_subcommand("ergodic", "average rates over random K x M channel draws");
  add_common(ergodic);
  ergodic->add_option("--k", cfg.k, "number of sources");
  ergodic->add_option("--m", cfg.m, "channel input dimension");
  ergodic->add_option("--snr_db", cfg.snr_db, "snr in dB");
  ergodic->add_option("--d", cfg.d, "distortion");
  ergodic->add_option("--d_grid", cfg.d_grid, "comma-separated distortion grid")->delimiter(',');
  ergodic->add_option("--trials", cfg.trials, "channel draws per grid point (default 200)");

  CLI::App* oneshot = app.add_subcommand("oneshot", "scalar codec Monte Carlo");
  add_common(oneshot);
  add_kxx(oneshot);
  oneshot->add_option("--d", cfg.d, "per-source distortion");
  oneshot->add_option("--rate", cfg.rate_bits, "rate in bits; 2^rate must be an integer");
  oneshot->add_option("--trials", cfg.trials, "simulated trials (default 100000)");
  oneshot->add_option("--a_file", cfg.a_file, "integer coefficient matrix (default: optimized)");

  CLI::App* relay = app.add_subcommand("relay", "relay sum rates over an snr sweep");
  add_common(relay);
  relay->add_option("--k", cfg.k, "number of relays");
  relay->add_option("--m", cfg.m, "transmit dimension");
  relay->add_option("--r0", cfg.r0, "per-relay compression rate in bits");
  relay->add_option("--snr_db_grid", cfg.snr_db_grid, "comma-separated snr grid in dB")
      ->delimiter(',');
  relay->add_option("--trials", cfg.trials, "channel draws per grid point (default 100)");

  CLI::App* jscc = app.add_subcommand("jscc", "analog joint source-channel distortions");
  add_common(jscc);
  add_kxx(jscc);
  jscc->add_option("--p", cfg.p, "channel power");
  jscc->add_option("--n", cfg.n, "actual noise power");
  jscc->add_option("--n_nom", cfg.n_nom, "nominal (design) noise power");

  CLI::App* reduce = app.add_subcommand("reduce", "shortest independent vectors of a basis");
  add_common(reduce);
  reduce->add_option("--basis_file", cfg.basis_file, "square generator matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(kVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  CLI::App* active = nullptr;
  if (app.got_subcommand(rates)) {
    cfg.command = Command::rates;
    active = rates;
  } else if (app.got_subcommand(ergodic)) {
    cfg.command = Command::ergodic;
    active = ergodic;
  } else if (app.got_subcommand(oneshot)) {
    cfg.command = Command::oneshot;
    active = oneshot;
  } else if (app.got_subcommand(relay)) {
    cfg.command = Command::relay;
    active = relay;
  } else if (app.got_subcommand(jscc)) {
    cfg.command = Command::jscc;
    active = jscc;
  } else {
    cfg.command = Command::reduce;
    active = reduce;
  }

  std::vector<std::string> from_file;
  if (!config_path.empty()) from_file = apply_config_file(active, config_path);
  auto file_set = [&](const char* key) {
    return std::find(from_file.begin(), from_file.end(), key) != from_file.end();
  };

  cfg.method = method_from_string(method_str);
  cfg.kxx = kxx_from_string(kxx_str);
  auto was_set = [&](const char* flag) {
    const CLI::Option* opt = active->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  cfg.d_set = was_set("--d");
  // --d/--d_grid are alternatives; a command-line value beats a file value
  // across the pair, not just key-for-key.
  if (cfg.d_set && !cfg.d_grid.empty()) {
    if (file_set("d_grid") && !file_set("d")) {
      cfg.d_grid.clear();
    } else if (file_set("d") && !file_set("d_grid")) {
      cfg.d_set = false;
      cfg.d = 0.0;
    }
  }
  cfg.rate_set = was_set("--rate");
  cfg.snr_db_set = was_set("--snr_db");
  cfg.r0_set = was_set("--r0");
  cfg.p_set = was_set("--p");
  cfg.n_set = was_set("--n");
  cfg.n_nom_set = was_set("--n_nom");

  Issues issues;
  validate(cfg, was_set("--trials"), issues);
  if (!issues.list.empty()) {
    throw ConfigError("invalid configuration: " + join(issues.list, "; "));
  }
  return cfg;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::rates: return "rates";
    case Command::ergodic: return "ergodic";
    case Command::oneshot: return "oneshot";
    case Command::relay: return "relay";
    case Command::jscc: return "jscc";
    case Command::reduce: return "reduce";
  }
  return "?";
}

const char* kxx_source_name(KxxSource s) {
  switch (s) {
    case KxxSource::identity: return "identity";
    case KxxSource::file: return "file";
    case KxxSource::integer: return "integer";
    case KxxSource::relay: return "relay";
  }
  return "?";
}

const char* method_name(MinimaMethod m) {
  switch (m) {
    case MinimaMethod::lll: return "lll";
    case MinimaMethod::enumerate: return "enumerate";
    case MinimaMethod::automatic: return "auto";
  }
  return "?";
}

std::string canonical_command_line(const ExperimentConfig& cfg) {
  std::vector<std::string> parts{"ifsc", command_name(cfg.command)};
  auto flag = [&](const char* name, const std::string& value) {
    parts.emplace_back(name);
    parts.push_back(value);
  };
  auto grid = [&](const std::vector<double>& values) {
    std::vector<std::string> fmt;
    fmt.reserve(values.size());
    for (double v : values) fmt.push_back(format_double(v));
    return join(fmt, ",");
  };
  auto kxx_flags = [&] {
    flag("--kxx", kxx_source_name(cfg.kxx));
    switch (cfg.kxx) {
      case KxxSource::identity: flag("--dim", std::to_string(cfg.dim)); break;
      case KxxSource::file: flag("--kxx_file", cfg.kxx_file); break;
      case KxxSource::integer: flag("--b_file", cfg.b_file); break;
      case KxxSource::relay:
        flag("--h_file", cfg.h_file);
        flag("--snr_db", format_double(cfg.snr_db));
        break;
    }
  };

  switch (cfg.command) {
    case Command::rates:
      kxx_flags();
      flag("--d_grid", grid(cfg.d_grid));
      break;
    case Command::ergodic:
      flag("--k", std::to_string(cfg.k));
      flag("--m", std::to_string(cfg.m));
      flag("--snr_db", format_double(cfg.snr_db));
      flag("--d_grid", grid(cfg.d_grid));
      flag("--trials", std::to_string(cfg.trials));
      break;
    case Command::oneshot:
      kxx_flags();
      flag("--d", format_double(cfg.d));
      flag("--rate", format_double(cfg.rate_bits));
      flag("--trials", std::to_string(cfg.trials));
      if (!cfg.a_file.empty()) flag("--a_file", cfg.a_file);
      break;
    case Command::relay:
      flag("--k", std::to_string(cfg.k));
      flag("--m", std::to_string(cfg.m));
      flag("--r0", format_double(cfg.r0));
      flag("--snr_db_grid", grid(cfg.snr_db_grid));
      flag("--trials", std::to_string(cfg.trials));
      break;
    case Command::jscc:
      kxx_flags();
      flag("--p", format_double(cfg.p));
      flag("--n", format_double(cfg.n));
      flag("--n_nom", format_double(cfg.n_nom));
      break;
    case Command::reduce:
      flag("--basis_file", cfg.basis_file);
      break;
  }
  flag("--seed", std::to_string(cfg.seed));
  flag("--method", method_name(cfg.method));
  flag("--format", cfg.format);
  if (!cfg.out.empty()) flag("--out", cfg.out);
  return join(parts, " ");
}

namespace {

std::vector<double> read_numbers(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string(what) + ": cannot open '" + path + "'");
  std::vector<double> numbers;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      double value = 0.0;
      auto res = std::from_chars(token.data(), token.data() + token.size(), value);
      if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ConfigError(std::string(what) + ": invalid number '" + token + "' in '" + path +
                          "'");
      }
      numbers.push_back(value);
    }
  }
  if (in.bad()) throw IoError(std::string(what) + ": read error on '" + path + "'");
  return numbers;
}

long long as_integer(double v, const char* what, const std::string& path) {
  if (!std::isfinite(v) || std::abs(v) > 9.0e15 ||
      std::abs(v - std::nearbyint(v)) > 1e-9 * std::max(1.0, std::abs(v))) {
    throw ConfigError(std::string(what) + ": expected integer entry in '" + path + "'");
  }
  return std::llround(v);
}

}  // namespace

Matrix read_square_matrix_file(const std::string& path, const char* what) {
  std::vector<double> numbers = read_numbers(path, what);
  if (numbers.empty()) throw ConfigError(std::string(what) + ": '" + path + "' is empty");
  long long k = as_integer(numbers[0], what, path);
  if (k < 1 || k > 64) {
    throw ConfigError(std::string(what) + ": dimension must lie in [1, 64] in '" + path + "'");
  }
  if (static_cast<long long>(numbers.size()) != 1 + k * k) {
    throw ConfigError(std::string(what) + ": expected " + std::to_string(k * k) +
                      " entries after the dimension in '" + path + "', got " +
                      std::to_string(numbers.size() - 1));
  }
  Matrix m(k, k);
  for (long long i = 0; i < k; ++i)
    for (long long j = 0; j < k; ++j) m(i, j) = numbers[static_cast<std::size_t>(1 + i * k + j)];
  return m;
}

IntMatrix read_integer_matrix_file(const std::string& path, const char* what) {
  Matrix m = read_square_matrix_file(path, what);
  IntMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = as_integer(m(i, j), what, path);
  return out;
}

Matrix read_channel_file(const std::string& path) {
  const char* what = "channel matrix";
  std::vector<double> numbers = read_numbers(path, what);
  if (numbers.size() < 2) throw ConfigError(std::string(what) + ": '" + path + "' is empty");
  long long rows = as_integer(numbers[0], what, path);
  long long cols = as_integer(numbers[1], what, path);
  if (rows < 1 || cols < 1 || rows > 64 || cols > 64) {
    throw ConfigError(std::string(what) + ": dimensions must lie in [1, 64] in '" + path + "'");
  }
  if (static_cast<long long>(numbers.size()) != 2 + rows * cols) {
    throw ConfigError(std::string(what) + ": expected " + std::to_string(rows * cols) +
                      " entries after the dimensions in '" + path + "'");
  }
  Matrix h(rows, cols);
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j)
      h(i, j) = numbers[static_cast<std::size_t>(2 + i * cols + j)];
  return h;
}

CovarianceMatrix build_kxx(const ExperimentConfig& cfg) {
  switch (cfg.kxx) {
    case KxxSource::identity:
      return CovarianceMatrix(Matrix::Identity(cfg.dim, cfg.dim));
    case KxxSource::file:
      return CovarianceMatrix(read_square_matrix_file(cfg.kxx_file, "covariance"));
    case KxxSource::integer:
      return build_cov_integer(read_integer_matrix_file(cfg.b_file, "integer matrix"));
    case KxxSource::relay:
      return build_cov_relay(read_channel_file(cfg.h_file), std::pow(10.0, cfg.snr_db / 10.0));
  }
  throw ConfigError("build_kxx: unknown covariance source");
}

}  // namespace ifsc::cli
