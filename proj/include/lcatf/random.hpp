#pragma once

#include <cstdint>

#include "lcatf/signal.hpp"

namespace lcatf {

/// Counter-based generator: output k of stream (seed, stream) is
/// splitmix64(key + k * golden), so any trial can be regenerated without
/// replaying earlier ones. The sequence is fixed by this file alone and does
/// not depend on the standard library's distributions.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on (0, 1); never returns 0.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Complex normal with independent N(0,1) parts.
  cplx complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Signal with i.i.d. complex normal entries.
Signal random_signal(const Group& g, CounterRng& rng);
/// Haar-random unit vector in L^2(G).
Signal random_unit_signal(const Group& g, CounterRng& rng);
PhaseFunction random_phase_function(const Group& g, CounterRng& rng);

}  // namespace lcatf
