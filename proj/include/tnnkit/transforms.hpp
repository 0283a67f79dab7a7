#pragma once

#include <string>

#include "tnnkit/laurent.hpp"
#include "tnnkit/section.hpp"

namespace tnn {

// Breadcrumb a transform can leave for reports and the CLI.
struct TransformTrace {
  std::string op;
  std::string notes;
  bool identity_checked = false;
};

// Multiply by (1 - z/delta), striking the right-plane pole at delta.
LaurentWindow remove_pole_right(const LaurentWindow& w, const Rational& delta,
                                TransformTrace* trace = nullptr);
// Multiply by (1 - 1/(delta_prime z)), striking the left-plane pole.
LaurentWindow remove_pole_left(const LaurentWindow& w, const Rational& delta_prime,
                               TransformTrace* trace = nullptr);

// Same operations on the factor data itself.
EdreiSpec remove_pole_right(const EdreiSpec& s, const Rational& delta);
EdreiSpec remove_pole_left(const EdreiSpec& s, const Rational& delta_prime);

// Requires column 1 of m to be j ones followed by zeros.  Subtracts each row
// from the one below it within the block of ones, then drops column 1.  The
// result is totally nonnegative exactly when the input is.
DenseMatrix whitney_reduce(const DenseMatrix& m, long j);

struct CombinedPair {
  LaurentWindow f;  // A p + B q
  LaurentWindow g;  // A q + B z p
};
CombinedPair combine(const Rational& A, const Rational& B, const LaurentWindow& p,
                     const LaurentWindow& q);

// Verifies, entry for entry on exact finite sections, that
//   T(A p + B q)   = sel(A,B) . H(p, q)
//   T(A q + B z p) = sel(A,B) . H(q, z p)
// where sel(A,B) places A at column 2i-1 and B at column 2i of row i.
struct CauchyBinetReport {
  bool forward_ok = false;
  bool companion_ok = false;
  long size = 0;
};
CauchyBinetReport cauchy_binet_check(const Rational& A, const Rational& B,
                                     const LaurentWindow& p, const LaurentWindow& q,
                                     long size, TransformTrace* trace = nullptr);

}  // namespace tnn
