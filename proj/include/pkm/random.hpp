#pragma once

#include <cstdint>
#include <random>

namespace pkm {

// mt19937_64 raw output is standard-defined; the distributions here are
// hand-rolled so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  // Standard normal via Box-Muller.
  double normal();

  // Standard exponential.
  double exponential();

  // Unbiased integer in [0, bound).
  std::uint64_t integer(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Child seed for run `index` under a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace pkm
