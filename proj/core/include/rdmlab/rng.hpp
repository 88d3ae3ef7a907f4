#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rdmlab {

/// Counter-based splittable generator. Every stream is a pure function of
/// (seed, purpose tag, counter), so reports are bit-reproducible and
/// independent streams can be derived without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view tag = {}) : key_(seed) {
    if (!tag.empty()) key_ = mix(key_ ^ fnv1a(tag));
  }

  /// Derive an independent stream for a sub-purpose.
  Rng split(std::string_view tag) const {
    Rng r(0);
    r.key_ = mix(key_ ^ fnv1a(tag));
    return r;
  }

  Rng split(std::uint64_t salt) const {
    Rng r(0);
    r.key_ = mix(key_ ^ (salt * 0x9e3779b97f4a7c15ull + 0x165667b19e3779f9ull));
    return r;
  }

  std::uint64_t next_u64() {
    return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (explicit formula, no library
  /// distribution objects; their output is implementation-defined).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Complex with independent standard-normal real and imaginary parts.
  std::complex<double> cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Dirichlet(1,...,1) weights: uniform on the simplex.
  std::vector<double> dirichlet_uniform(std::size_t k) {
    std::vector<double> w(k);
    double sum = 0.0;
    for (auto& wi : w) {
      double u = 0.0;
      do {
        u = uniform();
      } while (u <= 0.0);
      wi = -std::log(u);
      sum += wi;
    }
    for (auto& wi : w) wi /= sum;
    return w;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rdmlab
