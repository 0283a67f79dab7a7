#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tnnkit/laurent.hpp"
#include "tnnkit/rational.hpp"

namespace tnn {

struct DegenerateSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interlacing ratio representations.
//
// doubly_infinite:  C * prod (1+z/beta_mu)/(1+z/alpha_nu)
//                     * prod (1+1/(beta_mu' z))/(1+1/(alpha_nu' z))
//   with chain 0 < ... < 1/alpha_-2 < 1/beta_-1 < 1/alpha_-1
//                < beta_1 < alpha_1 < beta_2 < alpha_2 < ...
// meromorphic:      C * [(z+beta0)] / [(z+alpha0)]
//                     * prod (1+z/beta_mu)/(1+z/alpha_nu)
//   with chain 0 <= beta0 < alpha0 < beta_1 < alpha_1 < ...; the beta0 = 0
//   slot stores the bare z factor explicitly.
// affine:           C * (z + beta0), or the constant C when beta0 is absent.
enum class SKind { doubly_infinite, meromorphic, affine };

struct SFunctionSpec {
  SKind kind = SKind::affine;
  Rational C = Rational(1);
  std::vector<Rational> betas_pos, alphas_pos;  // ascending
  std::vector<Rational> betas_neg, alphas_neg;  // ascending by |index|
  std::optional<Rational> beta0, alpha0;        // meromorphic slots / affine beta0

  bool operator==(const SFunctionSpec&) const = default;
};

// Folds positive slot values into the normalized product lists (adjusting C),
// sorts the lists, and demotes kinds with empty sides (doubly -> meromorphic
// -> affine).  Spec equality is field equality after normalization.
SFunctionSpec normalize_spec(const SFunctionSpec& s);

// First adjacent chain pair out of order (lhs should precede rhs).
struct ChainViolation {
  std::string lhs, rhs;
  Rational lhs_value, rhs_value;
};

// nullopt means the kind-appropriate chain holds strictly (beta0 = 0 allowed).
std::optional<ChainViolation> validate_interlacing(const SFunctionSpec& s);

// F(z) = constant + linear*z + sum_nu coeff_nu * z/(z - pole_nu); poles are
// the negative reals -alpha.  linear is nonzero only when the numerator
// carries one more zero than the denominator.
struct PartialFractions {
  Rational constant;
  Rational linear;
  struct Term {
    Rational pole;   // location, < 0
    Rational coeff;  // A_nu
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;
  bool operator==(const PartialFractions&) const = default;
};

PartialFractions partial_fractions(const SFunctionSpec& s);

// Exact complex rational arithmetic; the evaluation surface for the
// half-plane checks.
struct RationalComplex {
  Rational re, im;
  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw PoleHit("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool operator==(const RationalComplex&) const = default;
};

// Product-form evaluation at a complex rational point, exact.  Throws PoleHit
// when z lands on a pole (or 0 with negative-side factors present).
RationalComplex evaluate_exact(const SFunctionSpec& s, const RationalComplex& z);

// Float surface over the exact evaluation.
std::complex<double> evaluate(const SFunctionSpec& s, const RationalComplex& z);

// Exact evaluation at a positive rational point.
Rational evaluate_real(const SFunctionSpec& s, const Rational& x);

// Exact evaluation of a partial-fraction form at a positive rational point.
Rational evaluate_pf(const PartialFractions& pf, const Rational& x);

struct HalfplaneReport {
  int samples = 0;
  Rational min_im;        // smallest Im F over the sampled upper half plane
  bool all_nonnegative = true;
};

// Seeded sample of upper-half-plane points, exact evaluation at each.
HalfplaneReport check_halfplane_map(const SFunctionSpec& s, int n_samples,
                                    std::uint64_t seed);

// The transform F -> z/F(z), expressed by relabeling zeros and poles.
SFunctionSpec reciprocal_transform(const SFunctionSpec& s);

struct NotSForm {
  std::string obstruction;
};

// Classifies F = q/p after cancelling common factors.  Returns the fitted
// spec, or the first obstruction (rate mismatch, residual pole, z power,
// chain violation).
std::variant<SFunctionSpec, NotSForm> ratio_classify(const EdreiSpec& p,
                                                     const EdreiSpec& q);

}  // namespace tnn
