#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifsc/lattice.hpp"
#include "ifsc/matrix.hpp"
#include "ifsc/types.hpp"

namespace ifsc::cli {

enum class Command { rates, ergodic, oneshot, relay, jscc, reduce };

enum class KxxSource { identity, file, integer, relay };

// Fully resolved run description. parse_config returns it with all defaults
// applied, so echoing it back (canonical_command_line) reproduces the run.
struct ExperimentConfig {
  Command command = Command::rates;

  // common
  std::uint64_t seed = 1;
  long long trials = 0;  // 0 until the per-command default is resolved
  MinimaMethod method = MinimaMethod::automatic;
  std::string out;       // empty = stdout
  std::string format = "csv";

  // covariance source (rates, oneshot, jscc)
  KxxSource kxx = KxxSource::identity;
  int dim = 0;
  std::string kxx_file;
  std::string b_file;
  std::string h_file;
  double snr_db = 0.0;  // also the fixed snr of the ergodic sweep
  bool snr_db_set = false;

  // random channel ensemble (ergodic, relay)
  int k = 0;
  int m = 0;

  // distortion (rates, ergodic use the grid; oneshot uses the scalar)
  std::vector<double> d_grid;
  double d = 0.0;
  bool d_set = false;

  // oneshot
  double rate_bits = 0.0;
  bool rate_set = false;
  std::string a_file;

  // relay
  double r0 = 0.0;
  bool r0_set = false;
  std::vector<double> snr_db_grid;

  // jscc
  double p = 0.0, n = 0.0, n_nom = 0.0;
  bool p_set = false, n_set = false, n_nom_set = false;

  // reduce
  std::string basis_file;
};

// Thrown (not an error) when --help/--version is requested; the text goes to
// stdout and the process exits 0.
struct HelpRequested {
  std::string text;
};

// Parses argv (and an optional --config file; flags win over file values).
// Collects every validation problem and reports them all in one ConfigError.
ExperimentConfig parse_config(int argc, const char* const* argv);

// Canonical flag echo of a resolved config; stored in result metadata and
// sufficient to reproduce the run bit-exactly.
std::string canonical_command_line(const ExperimentConfig& cfg);

const char* command_name(Command c);
const char* kxx_source_name(KxxSource s);
const char* method_name(MinimaMethod m);

// Plain-text matrix files. Square format: dimension K, then K*K row-major
// entries; channel format: rows cols, then row-major entries. '#' starts a
// comment. Open failures raise IoError, malformed content ConfigError.
Matrix read_square_matrix_file(const std::string& path, const char* what);
IntMatrix read_integer_matrix_file(const std::string& path, const char* what);
Matrix read_channel_file(const std::string& path);

// Materialize the covariance selected by --kxx.
CovarianceMatrix build_kxx(const ExperimentConfig& cfg);

}  // namespace ifsc::cli
