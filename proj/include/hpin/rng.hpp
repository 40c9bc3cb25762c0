#ifndef HPIN_RNG_HPP
#define HPIN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hpin {

// Counter-based generator: every variate is a pure function of
// (seed, stream, unit, draw), so parallel workers reproduce the serial
// stream no matter how replicas are scheduled.

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t stream, uint64_t unit, uint64_t draw) {
  uint64_t h = mix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
  h = mix64(h ^ stream);
  h = mix64(h ^ unit);
  h = mix64(h ^ draw);
  return h;
}

// Uniform in (0, 1), 53-bit mantissa, never exactly 0.
inline double u01(uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline double counter_uniform(uint64_t seed, uint64_t stream, uint64_t unit, uint64_t draw) {
  return u01(counter_hash(seed, stream, unit, draw));
}

// One standard normal per counter (Box-Muller, cosine branch).
inline double counter_normal(uint64_t seed, uint64_t stream, uint64_t unit, uint64_t draw) {
  const double u1 = u01(counter_hash(seed, stream, unit, 2 * draw));
  const double u2 = u01(counter_hash(seed, stream, unit, 2 * draw + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace hpin

#endif
