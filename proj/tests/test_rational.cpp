#include <doctest.h>

#include <sstream>

#include "tnnkit/rational.hpp"
#include "tnnkit/rng.hpp"

using tnn::Rational;

TEST_CASE("rational construction and canonical form") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-3, 2).str() == "-3/2");
}

TEST_CASE("rational arithmetic stays exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));

  // a sum that would drift under doubles
  Rational s(0);
  for (int i = 0; i < 300; ++i) s += Rational(1, 3);
  CHECK(s == Rational(100));
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK(Rational(1, 2).sign() == 1);
  CHECK(Rational(-1, 2).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(0).is_zero());
}

TEST_CASE("pow handles negative exponents") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(-2).pow(-3) == Rational(-1, 8));
  CHECK_THROWS(Rational(0).pow(-1));
}

TEST_CASE("inverse and division guard against zero") {
  CHECK(Rational(4, 9).inverse() == Rational(9, 4));
  CHECK_THROWS(Rational(0).inverse());
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor_z() == 3);
  CHECK(Rational(7, 2).ceil_z() == 4);
  CHECK(Rational(-7, 2).floor_z() == -4);
  CHECK(Rational(-7, 2).ceil_z() == -3);
  CHECK(Rational(5).floor_z() == 5);
  CHECK(Rational(5).ceil_z() == 5);
}

TEST_CASE("from_string round trips") {
  for (const char* s : {"0", "5", "-5", "3/2", "-22/7", "1000000000000000000000/7"}) {
    CHECK(Rational::from_string(s).str() == s);
  }
  CHECK(Rational::from_string("4/6") == Rational(2, 3));
  CHECK_THROWS(Rational::from_string("1/0"));
  CHECK_THROWS(Rational::from_string("abc"));
}

TEST_CASE("factorial") {
  CHECK(tnn::factorial(0) == Rational(1));
  CHECK(tnn::factorial(5) == Rational(120));
  CHECK(tnn::factorial(20) == Rational::from_string("2432902008176640000"));
}

TEST_CASE("splitmix64 matches the reference sequence") {
  // reference outputs for seed 1234567 from the published splitmix64 kernel
  tnn::SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("rng helpers honor their ranges") {
  tnn::SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    const auto r = rng.range(3, 9);
    CHECK(r >= 3);
    CHECK(r <= 9);
    const Rational x = rng.rational_in(Rational(1, 4), Rational(8), 6);
    CHECK(x >= Rational(1, 4));
    CHECK(x <= Rational(8));
  }
}

TEST_CASE("distinct_ascending yields a strict chain") {
  tnn::SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto vals = rng.distinct_ascending(Rational(1, 4), Rational(8), 5, 6);
    REQUIRE(vals.size() == 5);
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) CHECK(vals[i] < vals[i + 1]);
    CHECK(vals.front() >= Rational(1, 4));
    CHECK(vals.back() <= Rational(8));
  }
}

TEST_CASE("sub_seed decorrelates trials") {
  const auto a = tnn::sub_seed(42, 0);
  const auto b = tnn::sub_seed(42, 1);
  const auto c = tnn::sub_seed(43, 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(b != c);
  // frozen values so a report's per-trial seeds stay reproducible
  CHECK(tnn::sub_seed(1, 0) == 16834447057089888969ULL);
  CHECK(tnn::sub_seed(42, 0) == 2949826092126892291ULL);
  CHECK(tnn::sub_seed(42, 1) == 6904877152625194467ULL);
  CHECK(tnn::sub_seed(42, 2) == 7297471543603743092ULL);
}
