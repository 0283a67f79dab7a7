#include "tnnkit/laurent.hpp"

#include <algorithm>

namespace tnn {

void EdreiSpec::validate() const {
  if (C < Rational(0)) throw InvalidSpec("EdreiSpec: C must be >= 0");
  if (A < Rational(0)) throw InvalidSpec("EdreiSpec: A must be >= 0");
  if (A0 < Rational(0)) throw InvalidSpec("EdreiSpec: A0 must be >= 0");
  auto all_positive = [](const std::vector<Rational>& v, const char* name) {
    for (const auto& x : v)
      if (x <= Rational(0))
        throw InvalidSpec(std::string("EdreiSpec: ") + name +
                          " entries must be > 0");
  };
  all_positive(zeros_pos, "zeros_pos");
  all_positive(zeros_neg, "zeros_neg");
  all_positive(poles_pos, "poles_pos");
  all_positive(poles_neg, "poles_neg");
}

LaurentWindow::LaurentWindow(long lo, long hi, std::vector<Rational> coeffs,
                             bool exact_left, bool exact_right, bool approx)
    : lo_(lo),
      hi_(hi),
      c_(std::move(coeffs)),
      exact_left_(exact_left),
      exact_right_(exact_right),
      approx_(approx) {
  if (hi_ < lo_) throw EmptyWindow("LaurentWindow: hi < lo");
  if (static_cast<long>(c_.size()) != size())
    throw std::invalid_argument("LaurentWindow: coefficient count mismatch");
}

LaurentWindow LaurentWindow::zero(long lo, long hi) {
  if (hi < lo) throw EmptyWindow("LaurentWindow: hi < lo");
  return LaurentWindow(lo, hi, std::vector<Rational>(hi - lo + 1), true, true);
}

LaurentWindow LaurentWindow::polynomial(long lo, std::vector<Rational> coeffs) {
  long hi = lo + static_cast<long>(coeffs.size()) - 1;
  return LaurentWindow(lo, hi, std::move(coeffs), true, true);
}

const Rational& LaurentWindow::at(long n) const {
  if (n < lo_ || n > hi_)
    throw OutOfWindow("exponent " + std::to_string(n) + " outside window [" +
                      std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  return c_[n - lo_];
}

bool LaurentWindow::known(long n) const {
  if (n >= lo_ && n <= hi_) return true;
  if (n < lo_) return exact_left_;
  return exact_right_;
}

Rational LaurentWindow::coeff(long n) const {
  if (n >= lo_ && n <= hi_) return c_[n - lo_];
  if ((n < lo_ && exact_left_) || (n > hi_ && exact_right_)) return Rational(0);
  throw OutOfWindow("exponent " + std::to_string(n) +
                    " outside determined range of window [" +
                    std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
}

namespace {

// Effective tail flags for range arithmetic: approx windows carry no exactness
// promise at all, so their stored range is treated as the full support and the
// result inherits the approx mark instead.
struct TailView {
  long lo, hi;
  bool left, right;
};

TailView view(const LaurentWindow& w) {
  if (w.approx()) return {w.lo(), w.hi(), true, true};
  return {w.lo(), w.hi(), w.exact_left(), w.exact_right()};
}

}  // namespace

LaurentWindow window_mul(const LaurentWindow& a, const LaurentWindow& b) {
  TailView va = view(a), vb = view(b);
  // Unknown tails on opposite sides smear into every output exponent.
  if ((!va.left && !vb.right) || (!va.right && !vb.left))
    throw EmptyWindow(
        "window_mul: opposite-side unknown tails determine no coefficient");

  long lo;
  if (va.left && vb.left) {
    lo = va.lo + vb.lo;
  } else if (va.left) {
    lo = va.hi + vb.lo;  // b's unknown left tail meets all of a
  } else if (vb.left) {
    lo = va.lo + vb.hi;
  } else {
    lo = std::max(va.lo + vb.hi, va.hi + vb.lo);
  }
  long hi;
  if (va.right && vb.right) {
    hi = va.hi + vb.hi;
  } else if (va.right) {
    hi = va.lo + vb.hi;
  } else if (vb.right) {
    hi = va.hi + vb.lo;
  } else {
    hi = std::min(va.lo + vb.hi, va.hi + vb.lo);
  }
  if (lo > hi) throw EmptyWindow("window_mul: determined range is empty");

  std::vector<Rational> out(hi - lo + 1);
  for (long n = lo; n <= hi; ++n) {
    Rational acc(0);
    long k0 = std::max(a.lo(), n - b.hi());
    long k1 = std::min(a.hi(), n - b.lo());
    for (long k = k0; k <= k1; ++k) acc += a.at(k) * b.at(n - k);
    out[n - lo] = acc;
  }
  bool approx = a.approx() || b.approx();
  bool el = !approx && a.exact_left() && b.exact_left();
  bool er = !approx && a.exact_right() && b.exact_right();
  return LaurentWindow(lo, hi, std::move(out), el, er, approx);
}

LaurentWindow window_add(const LaurentWindow& a, const LaurentWindow& b) {
  TailView va = view(a), vb = view(b);
  long lo = std::max(va.left ? std::min(va.lo, vb.lo) : va.lo,
                     vb.left ? std::min(va.lo, vb.lo) : vb.lo);
  long hi = std::min(va.right ? std::max(va.hi, vb.hi) : va.hi,
                     vb.right ? std::max(va.hi, vb.hi) : vb.hi);
  if (lo > hi) throw EmptyWindow("window_add: determined range is empty");
  std::vector<Rational> out(hi - lo + 1);
  for (long n = lo; n <= hi; ++n) {
    Rational acc(0);
    if (n >= a.lo() && n <= a.hi()) acc += a.at(n);
    if (n >= b.lo() && n <= b.hi()) acc += b.at(n);
    out[n - lo] = acc;
  }
  bool approx = a.approx() || b.approx();
  bool el = !approx && a.exact_left() && b.exact_left();
  bool er = !approx && a.exact_right() && b.exact_right();
  return LaurentWindow(lo, hi, std::move(out), el, er, approx);
}

LaurentWindow exp_factor_coeffs(const Rational& A, const Rational& A0, long lo,
                                long hi, int trunc) {
  if (A < Rational(0) || A0 < Rational(0))
    throw InvalidSpec("exp_factor_coeffs: rates must be >= 0");
  if (trunc < 0) throw InvalidSpec("exp_factor_coeffs: trunc must be >= 0");
  std::vector<Rational> out(hi - lo + 1);

  if (A.is_zero() && A0.is_zero()) {
    for (long n = lo; n <= hi; ++n) out[n - lo] = (n == 0) ? Rational(1) : Rational(0);
    return LaurentWindow(lo, hi, std::move(out), true, true);
  }
  if (A0.is_zero()) {
    // Single term k = 0: c_n = A^n / n! for n >= 0.
    for (long n = std::max(lo, 0L); n <= hi; ++n)
      out[n - lo] = A.pow(n) / factorial(static_cast<unsigned long>(n));
    return LaurentWindow(lo, hi, std::move(out), true, false);
  }
  if (A.is_zero()) {
    // Single term k = -n: c_n = A0^(-n) / (-n)! for n <= 0.
    for (long n = lo; n <= std::min(hi, 0L); ++n)
      out[n - lo] = A0.pow(-n) / factorial(static_cast<unsigned long>(-n));
    return LaurentWindow(lo, hi, std::move(out), false, true);
  }
  // Both rates positive: every coefficient is an infinite sum; truncate.
  for (long n = lo; n <= hi; ++n) {
    Rational acc(0);
    for (long k = std::max(0L, -n); k <= trunc; ++k)
      acc += A.pow(n + k) * A0.pow(k) /
             (factorial(static_cast<unsigned long>(n + k)) *
              factorial(static_cast<unsigned long>(k)));
    out[n - lo] = acc;
  }
  return LaurentWindow(lo, hi, std::move(out), false, false, /*approx=*/true);
}

namespace {

// Restrict a window to [lo, hi], zero-padding certified sides.  Cropping away
// stored coefficients keeps the tail certificate only if they were all zero.
LaurentWindow refit(const LaurentWindow& w, long lo, long hi) {
  std::vector<Rational> out(hi - lo + 1);
  bool el = w.exact_left(), er = w.exact_right();
  for (long n = lo; n <= hi; ++n) out[n - lo] = w.coeff(n);
  for (long n = w.lo(); n < lo; ++n)
    if (!w.at(n).is_zero()) el = false;
  for (long n = hi + 1; n <= w.hi(); ++n)
    if (!w.at(n).is_zero()) er = false;
  if (w.approx()) el = er = false;
  return LaurentWindow(lo, hi, std::move(out), el, er, w.approx());
}

LaurentWindow geometric_pos(const Rational& delta, long terms) {
  // 1/(1 - z/delta) = sum_n (1/delta)^n z^n, truncated.
  std::vector<Rational> c(terms + 1);
  Rational r = delta.inverse(), acc(1);
  for (long n = 0; n <= terms; ++n) {
    c[n] = acc;
    acc *= r;
  }
  return LaurentWindow(0, terms, std::move(c), true, false);
}

LaurentWindow geometric_neg(const Rational& delta, long terms) {
  return reverse_series(geometric_pos(delta, terms));
}

}  // namespace

LaurentWindow edrei_coeffs(const EdreiSpec& spec, long lo, long hi, int trunc) {
  spec.validate();
  if (lo > hi) throw EmptyWindow("edrei_coeffs: hi < lo");
  if (spec.C.is_zero()) return LaurentWindow::zero(lo, hi);

  const long tlo = lo - spec.j, thi = hi - spec.j;  // target in factor space
  const long Zp = static_cast<long>(spec.zeros_pos.size());
  const long Zn = static_cast<long>(spec.zeros_neg.size());
  const bool both_exp = spec.A > Rational(0) && spec.A0 > Rational(0);
  const long right_trunc = static_cast<long>(spec.poles_pos.size()) +
                           ((spec.A > Rational(0) && !both_exp) ? 1 : 0);
  const long left_trunc = static_cast<long>(spec.poles_neg.size()) +
                          ((spec.A0 > Rational(0) && !both_exp) ? 1 : 0);
  if (right_trunc > 0 && left_trunc > 0)
    throw EmptyWindow(
        "edrei_coeffs: truncated factors on both sides determine no exact "
        "coefficients");

  LaurentWindow acc = LaurentWindow::polynomial(0, {spec.C});
  for (const auto& beta : spec.zeros_pos)
    acc = window_mul(acc, LaurentWindow::polynomial(0, {Rational(1), beta.inverse()}));
  for (const auto& beta : spec.zeros_neg)
    acc = window_mul(acc, LaurentWindow::polynomial(-1, {beta.inverse(), Rational(1)}));

  if (both_exp) {
    // Approximate values; size each factor from the running range so the
    // target survives the approx-view range arithmetic.
    const long explo = tlo - Zp - Zn - 1, exphi = thi + Zp + Zn + 1;
    acc = window_mul(acc, exp_factor_coeffs(spec.A, spec.A0, explo, exphi, trunc));
    for (const auto& d : spec.poles_pos)
      acc = window_mul(acc, geometric_pos(d, thi - acc.lo() + 1));
    for (const auto& d : spec.poles_neg)
      acc = window_mul(acc, geometric_neg(d, acc.hi() - tlo + 1));
  } else if (right_trunc > 0) {
    const long K = std::max(thi + Zn, 0L);
    if (spec.A > Rational(0))
      acc = window_mul(acc, exp_factor_coeffs(spec.A, Rational(0), 0, K, trunc));
    for (const auto& d : spec.poles_pos) acc = window_mul(acc, geometric_pos(d, K));
  } else if (left_trunc > 0) {
    const long K = std::max(-tlo + Zp, 0L);
    if (spec.A0 > Rational(0))
      acc = window_mul(acc, exp_factor_coeffs(Rational(0), spec.A0, -K, 0, trunc));
    for (const auto& d : spec.poles_neg) acc = window_mul(acc, geometric_neg(d, K));
  }

  return refit(shift_mul_z(acc, spec.j, Rational(1)), lo, hi);
}

LaurentWindow reverse_series(const LaurentWindow& w) {
  std::vector<Rational> c(w.coeffs().rbegin(), w.coeffs().rend());
  return LaurentWindow(-w.hi(), -w.lo(), std::move(c), w.exact_right(),
                       w.exact_left(), w.approx());
}

LaurentWindow shift_mul_z(const LaurentWindow& w, long k, const Rational& c) {
  if (c.is_zero())
    return LaurentWindow::zero(w.lo() + k, w.hi() + k);
  std::vector<Rational> out(w.coeffs());
  for (auto& x : out) x *= c;
  return LaurentWindow(w.lo() + k, w.hi() + k, std::move(out), w.exact_left(),
                       w.exact_right(), w.approx());
}

EdreiSpec edrei_mul(const EdreiSpec& a, const EdreiSpec& b) {
  EdreiSpec out;
  out.C = a.C * b.C;
  out.j = a.j + b.j;
  out.A = a.A + b.A;
  out.A0 = a.A0 + b.A0;
  auto cat = [](std::vector<Rational> x, const std::vector<Rational>& y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    return x;
  };
  out.zeros_pos = cat(a.zeros_pos, b.zeros_pos);
  out.zeros_neg = cat(a.zeros_neg, b.zeros_neg);
  out.poles_pos = cat(a.poles_pos, b.poles_pos);
  out.poles_neg = cat(a.poles_neg, b.poles_neg);
  return out;
}

}  // namespace tnn
