#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace hkm {

// SplitMix64 finalizer, used to turn structured indices into seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

// Deterministic random stream.
//
// Stream-splitting rule: a stream is keyed by (seed, i0, i1, i2), with the
// key folded through SplitMix64 into an mt19937_64 seed.  Everything sampled
// in this codebase derives its stream key from stable structural indices
// (cell index, trial index, data-point index), never from execution order,
// so a run parallelized across threads draws exactly the same numbers as a
// serial run.
//
// normal() uses the Box-Muller cosine branch and consumes exactly two engine
// words per call; no state is cached between calls.  Distributions from
// <random> are avoided on purpose: their algorithms are not pinned by the
// standard, and all output here must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t engine_seed) : engine_(engine_seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t i0 = 0,
                    std::uint64_t i1 = 0, std::uint64_t i2 = 0) {
    return Rng(mix_seed(mix_seed(mix_seed(seed, i0), i1), i2));
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  Eigen::VectorXd normal_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925287;
  std::mt19937_64 engine_;
};

}  // namespace hkm
