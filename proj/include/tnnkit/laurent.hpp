#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tnnkit/rational.hpp"

namespace tnn {

struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient data for one generating function in the product form
//   C z^j exp(A z + A0/z) * prod (1+z/beta) * prod (1+1/(beta' z))
//                         / prod (1-z/delta) / prod (1-1/(delta' z)).
// All parameters nonnegative; zero/pole magnitudes strictly positive.
struct EdreiSpec {
  Rational C = Rational(1);
  long j = 0;
  Rational A = Rational(0);
  Rational A0 = Rational(0);
  std::vector<Rational> zeros_pos;  // beta_mu, factors (1 + z/beta)
  std::vector<Rational> zeros_neg;  // beta'_mu, factors (1 + 1/(beta' z))
  std::vector<Rational> poles_pos;  // delta_nu, factors 1/(1 - z/delta)
  std::vector<Rational> poles_neg;  // delta'_nu, factors 1/(1 - 1/(delta' z))

  void validate() const;  // throws InvalidSpec
  bool operator==(const EdreiSpec&) const = default;
};

// Contiguous block of Laurent coefficients c_lo..c_hi with tail metadata.
// exact_left / exact_right certify that every coefficient below lo / above hi
// is exactly zero.  approx marks stored values that are themselves truncation
// approximations (only the double-sided exponential produces these); such
// windows are never trusted downstream.
class LaurentWindow {
 public:
  LaurentWindow(long lo, long hi, std::vector<Rational> coeffs, bool exact_left,
                bool exact_right, bool approx = false);

  static LaurentWindow zero(long lo, long hi);
  static LaurentWindow polynomial(long lo, std::vector<Rational> coeffs);

  long lo() const { return lo_; }
  long hi() const { return hi_; }
  long size() const { return hi_ - lo_ + 1; }
  bool exact_left() const { return exact_left_; }
  bool exact_right() const { return exact_right_; }
  bool approx() const { return approx_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  // Coefficient at exponent n; n must lie inside [lo, hi].
  const Rational& at(long n) const;

  // True when the coefficient at n is determined: inside the window, or on a
  // side certified exactly zero.
  bool known(long n) const;

  // Determined coefficient at n (zero on certified sides); throws OutOfWindow
  // when the exponent escapes the determined range.
  Rational coeff(long n) const;

  bool operator==(const LaurentWindow&) const = default;

 private:
  long lo_, hi_;
  std::vector<Rational> c_;
  bool exact_left_, exact_right_;
  bool approx_;
};

// Cauchy product restricted to the range both inputs fully determine.
// Throws EmptyWindow when no coefficient of the product is determined.
LaurentWindow window_mul(const LaurentWindow& a, const LaurentWindow& b);

// Coefficient-wise sum on the common determined range.
LaurentWindow window_add(const LaurentWindow& a, const LaurentWindow& b);

// c_n of exp(A z + A0/z): sum over k of A^(n+k) A0^k / ((n+k)! k!).
// One-sided cases (A = 0 or A0 = 0) are exact; when both rates are positive
// the inner sum is truncated at k = trunc and the window is marked approx.
LaurentWindow exp_factor_coeffs(const Rational& A, const Rational& A0, long lo,
                                long hi, int trunc = 24);

// Coefficient window of the full product form on [lo, hi]; expansion lengths
// for pole and exponential factors are derived from the requested range.
LaurentWindow edrei_coeffs(const EdreiSpec& spec, long lo, long hi,
                           int trunc = 24);

// c_n -> c_{-n}; exactness flags swap sides.
LaurentWindow reverse_series(const LaurentWindow& w);

// Multiply by c * z^k: shifts exponents by k and scales coefficients.
LaurentWindow shift_mul_z(const LaurentWindow& w, long k, const Rational& c);

// Multiply two generating specs (concatenate factor lists, add rates/shifts).
EdreiSpec edrei_mul(const EdreiSpec& a, const EdreiSpec& b);

}  // namespace tnn
