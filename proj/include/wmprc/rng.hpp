#pragma once

#include <cstdint>

// Deterministic counter-based random stream. The protocol is fixed so that
// any implementation language reproduces the same doubles bit for bit:
//
//   value(key, i)   = splitmix64_fin(key + (i + 1) * 0x9E3779B97F4A7C15)
//   uniform(key, i) = ((value(key, i) >> 11) + 0.5) * 2^-53     in (0, 1)
//   normal(key, i)  = ppnd16(uniform(key, i))                   N(0, 1)
//   subkey(key, i)  = value(key, i)
//
// splitmix64_fin is the SplitMix64 finalizer (Steele, Lea & Flood 2014);
// ppnd16 is Wichura's AS 241 inverse normal CDF, accurate to ~1e-16.
// Replication r of an experiment with master seed S draws its s-th error
// as normal(subkey(S, r), s).
namespace wmprc {

inline uint64_t splitmix64_fin(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline uint64_t stream_value(uint64_t key, uint64_t index) {
  return splitmix64_fin(key + (index + 1) * 0x9E3779B97F4A7C15ull);
}

inline uint64_t stream_subkey(uint64_t key, uint64_t index) {
  return stream_value(key, index);
}

// Uniform in the open interval (0, 1): top 53 bits, centered half-steps.
inline double stream_uniform(uint64_t key, uint64_t index) {
  return (static_cast<double>(stream_value(key, index) >> 11) + 0.5) *
         0x1.0p-53;
}

// Inverse of the standard normal CDF (AS 241, PPND16). p must be in (0, 1).
double inverse_normal_cdf(double p);

inline double stream_normal(uint64_t key, uint64_t index) {
  return inverse_normal_cdf(stream_uniform(key, index));
}

// Standard normal CDF via erfc; used by the closed-form prediction-error
// oracles.
double normal_cdf(double x);

}  // namespace wmprc
