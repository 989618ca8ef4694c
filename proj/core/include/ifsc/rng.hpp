#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ifsc {

// Deterministic random stream. mt19937_64 has a standard-specified output
// sequence, and we convert to doubles by hand, so a given seed produces the
// same draws on every platform/compiler. Do not switch to the std::*
// distributions: their algorithms are implementation-defined.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [-half_width, half_width).
  double uniform_symmetric(double half_width) {
    return (uniform01() - 0.5) * (2.0 * half_width);
  }

  // Standard normal via Box-Muller; draws come out in pairs.
  double normal();

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Collapse (seed, stream tags...) into one substream seed. Used to give every
// (sweep point, trial) its own decorrelated stream so that results do not
// depend on how trials are chunked across workers.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace ifsc
