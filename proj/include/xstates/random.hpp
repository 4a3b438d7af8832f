#pragma once

#include <cstdint>
#include <random>

namespace xstates {

// Independent random stream for one (seed, index) pair. The engine is seeded
// through std::seed_seq and doubles are built from the top 53 bits, so the
// sequence is identical across standard libraries.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  // Uniform on [0, 1).
  double uniform();
  // Exponential with unit rate.
  double exponential();
  // Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace xstates
