#pragma once

#include <cstdint>
#include <random>

#include "mstfan/rational.hpp"

namespace mstfan {

// Seeded pseudo-random source of small integers and rationals. Runs with the
// same seed produce the same sequence on every platform (mt19937_64 and the
// integer mapping below are fully specified).
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  // p/q with |p| <= bound and q in [1, max_den].
  Rational rational(long bound, long max_den) {
    Rational q(integer(-bound, bound), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  RationalVector integer_vector(std::size_t n, long bound) {
    RationalVector v(n);
    for (auto& x : v) x = integer(-bound, bound);
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mstfan
