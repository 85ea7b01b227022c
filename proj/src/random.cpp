#include "lcatf/random.hpp"

#include <cmath>
#include <numbers>

namespace lcatf {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed * kGolden + 0x632BE59BD9B4E019ULL) ^ splitmix64(~stream)) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cplx CounterRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Signal random_signal(const Group& g, CounterRng& rng) {
  Signal s = Signal::zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) s[i] = rng.complex_normal();
  return s;
}

Signal random_unit_signal(const Group& g, CounterRng& rng) {
  Signal s = random_signal(g, rng);
  s *= 1.0 / s.norm();
  return s;
}

PhaseFunction random_phase_function(const Group& g, CounterRng& rng) {
  PhaseFunction f = PhaseFunction::zeros(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.complex_normal();
  return f;
}

}  // namespace lcatf
