#pragma once

#include <random>

#include "nnv/rational.hpp"

namespace nnv::testutil {

inline std::mt19937_64 rng(unsigned seed = 20240811) { return std::mt19937_64(seed); }

// Uniform numerator in [-bound, bound], denominator in [1, bound].
inline Rational random_rational(std::mt19937_64& gen, long bound = 1 << 20) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  return rat(num(gen), den(gen));
}

inline long random_int(std::mt19937_64& gen, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(gen);
}

// Small rational, handy where solver inputs should stay readable.
inline Rational random_small_rational(std::mt19937_64& gen, long num_bound = 10,
                                      long den_bound = 4) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return rat(num(gen), den(gen));
}

}  // namespace nnv::testutil
