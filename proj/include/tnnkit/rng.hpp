#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "tnnkit/rational.hpp"

namespace tnn {

// splitmix64 (Steele, Lea, Flood 2014).  Chosen because the whole state is
// one 64-bit word and the update is three xor-shift-multiply lines, so any
// other implementation can replay a report from its master seed alone.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased value in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  // Uniform-ish rational in [lo, hi]: draws a denominator d in [1, max_den],
  // then a numerator giving a value inside the interval.
  Rational rational_in(const Rational& lo, const Rational& hi, long max_den) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      long d = range(1, max_den);
      mpz_class nlo = (lo * Rational(d)).ceil_z();
      mpz_class nhi = (hi * Rational(d)).floor_z();
      if (nhi < nlo) continue;
      mpz_class span = nhi - nlo + 1;
      if (!span.fits_slong_p()) continue;
      long num_off = static_cast<long>(below(span.get_si()));
      mpz_class num = nlo + num_off;
      return Rational(mpq_class(num, mpz_class(d)));
    }
    return lo;  // interval narrower than 1/max_den everywhere; degrade politely
  }

  // n distinct rationals in [lo, hi], ascending.
  std::vector<Rational> distinct_ascending(const Rational& lo, const Rational& hi,
                                           int n, long max_den) {
    std::set<Rational> got;
    int attempts = 0;
    while (static_cast<int>(got.size()) < n && attempts < 4096) {
      got.insert(rational_in(lo, hi, max_den));
      ++attempts;
    }
    // Widen the denominator if the box was too coarse for n distinct values.
    long d = max_den;
    while (static_cast<int>(got.size()) < n) {
      d *= 2;
      got.insert(rational_in(lo, hi, d));
    }
    return std::vector<Rational>(got.begin(), got.end());
  }
};

// Per-trial sub-seed: hash(master_seed, trial_index) with the same mixer.
inline std::uint64_t sub_seed(std::uint64_t master_seed, std::uint64_t trial) {
  SplitMix64 s(master_seed ^ (trial + 1) * 0x9E3779B97F4A7C15ull);
  return s.next();
}

}  // namespace tnn
