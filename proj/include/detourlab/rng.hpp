#pragma once

#include <cmath>
#include <cstdint>

#include "detourlab/scalar.hpp"

namespace detourlab {

/// Deterministic counter-based generator. Output i for seed s is
/// splitmix64(s + (i+1) * 0x9E3779B97F4A7C15); no internal state other than
/// the counter, so any implementation of the same formula reproduces the
/// stream exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
  }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Dense matrix with i.i.d. standard normal entries.
inline Mat<double> gaussian_matrix(int rows, int cols, CounterRng& rng) {
  Mat<double> m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

/// Dense rational matrix with small random entries (numerators in
/// [-bound, bound], denominators in [1, den_bound]).
inline Mat<Rational> small_rational_matrix(int rows, int cols, CounterRng& rng,
                                           long bound = 3, long den_bound = 2) {
  Mat<Rational> m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = Rational(rng.uniform_int(-bound, bound),
                         rng.uniform_int(1, den_bound));
  return m;
}

}  // namespace detourlab
