#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace reachmesh::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a master seed and a stream path. Counter-based,
/// so worker results never depend on thread scheduling.
inline std::uint64_t derive(std::uint64_t master, std::span<const std::uint64_t> path) {
  std::uint64_t s = master ^ 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : path) {
    s ^= splitmix64(s) + p;
    splitmix64(s);
  }
  return splitmix64(s);
}

inline std::uint64_t derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  return derive(master, std::span<const std::uint64_t>(path.begin(), path.size()));
}

/// mt19937_64 engine with hand-rolled uniform/normal mappers. The standard
/// distributions are implementation-defined; these are not.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. Consumes exactly two raw draws.
  double normal() {
    double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double normal(double mean, double std) { return mean + std * normal(); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace reachmesh::rng
