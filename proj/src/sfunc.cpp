#include "tnnkit/sfunc.hpp"

#include <algorithm>
#include <complex>

#include "tnnkit/rng.hpp"

namespace tnn {

namespace {

using Poly = std::vector<Rational>;  // coefficients by ascending degree

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_deriv(const Poly& p) {
  if (p.size() <= 1) return {Rational(0)};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rational(static_cast<long>(i));
  return out;
}

}  // namespace

SFunctionSpec normalize_spec(const SFunctionSpec& s) {
  SFunctionSpec out = s;
  if (out.C.is_zero()) {
    return SFunctionSpec{SKind::affine, Rational(0), {}, {}, {}, {}, std::nullopt,
                         std::nullopt};
  }
  if (out.beta0 && *out.beta0 > Rational(0)) {
    out.C *= *out.beta0;
    out.betas_pos.push_back(*out.beta0);
    out.beta0.reset();
  }
  if (out.alpha0 && *out.alpha0 > Rational(0)) {
    out.C /= *out.alpha0;
    out.alphas_pos.push_back(*out.alpha0);
    out.alpha0.reset();
  }
  std::sort(out.betas_pos.begin(), out.betas_pos.end());
  std::sort(out.alphas_pos.begin(), out.alphas_pos.end());
  std::sort(out.betas_neg.begin(), out.betas_neg.end());
  std::sort(out.alphas_neg.begin(), out.alphas_neg.end());

  const bool has_neg = !out.betas_neg.empty() || !out.alphas_neg.empty();
  if (has_neg) {
    out.kind = SKind::doubly_infinite;
    return out;
  }
  const bool zfac = out.beta0.has_value();
  const std::size_t zeros = out.betas_pos.size() + (zfac ? 1 : 0);
  const bool has_poles = !out.alphas_pos.empty() || out.alpha0.has_value();
  if (!has_poles && zeros <= 1) {
    SFunctionSpec aff;
    aff.kind = SKind::affine;
    if (zfac) {
      aff.C = out.C;
      aff.beta0 = Rational(0);
    } else if (!out.betas_pos.empty()) {
      // C (1 + z/b) = (C/b) (z + b)
      aff.C = out.C / out.betas_pos[0];
      aff.beta0 = out.betas_pos[0];
    } else {
      aff.C = out.C;
    }
    return aff;
  }
  out.kind = SKind::meromorphic;
  return out;
}

namespace {

struct ChainEntry {
  std::string name;
  Rational value;
  char tag;          // 'b' or 'a'
  bool allow_equal;  // only the meromorphic beta0 slot may equal its left bound
};

std::optional<ChainViolation> scan_chain(const std::vector<ChainEntry>& chain) {
  std::string prev_name = "0";
  Rational prev_value(0);
  char prev_tag = 0;
  for (const auto& e : chain) {
    const bool order_ok = e.allow_equal ? (e.value >= prev_value) : (e.value > prev_value);
    if (!order_ok) return ChainViolation{prev_name, e.name, prev_value, e.value};
    if (prev_tag != 0 && e.tag == prev_tag)
      return ChainViolation{prev_name, e.name, prev_value, e.value};
    prev_name = e.name;
    prev_value = e.value;
    prev_tag = e.tag;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ChainViolation> validate_interlacing(const SFunctionSpec& s) {
  if (s.kind == SKind::affine) {
    if (s.beta0 && *s.beta0 < Rational(0))
      return ChainViolation{"0", "beta0", Rational(0), *s.beta0};
    return std::nullopt;
  }

  std::vector<ChainEntry> chain;
  auto name_of = [](const char* base, long k) {
    return std::string(base) + "_" + std::to_string(k);
  };

  if (s.kind == SKind::doubly_infinite) {
    // Entries on (0, 1/alpha_-1]: ... 1/beta_-1 < 1/alpha_-1, then positives.
    for (const auto& v : s.betas_neg)
      if (v <= Rational(0))
        return ChainViolation{"0", "beta_-?", Rational(0), v};
    for (const auto& v : s.alphas_neg)
      if (v <= Rational(0))
        return ChainViolation{"0", "alpha_-?", Rational(0), v};
    const long nb = static_cast<long>(s.betas_neg.size());
    const long na = static_cast<long>(s.alphas_neg.size());
    // Below z^0 the chain may start with either letter, but the counts must
    // agree up to the one extra pole the template allows.
    if (nb != na && nb != na - 1)
      return ChainViolation{"count(betas_neg)", "count(alphas_neg)",
                            Rational(nb), Rational(na)};
    const long cpb = static_cast<long>(s.betas_pos.size());
    const long cpa = static_cast<long>(s.alphas_pos.size());
    if (cpa != cpb && cpa != cpb - 1)
      return ChainViolation{"count(alphas_pos)", "count(betas_pos)",
                            Rational(cpa), Rational(cpb)};
    for (long k = std::max(nb, na); k >= 1; --k) {
      if (k <= nb)
        chain.push_back({name_of("1/beta_-", k), s.betas_neg[k - 1].inverse(), 'b', false});
      if (k <= na)
        chain.push_back({name_of("1/alpha_-", k), s.alphas_neg[k - 1].inverse(), 'a', false});
    }
    const long pb = static_cast<long>(s.betas_pos.size());
    const long pa = static_cast<long>(s.alphas_pos.size());
    for (long k = 1; k <= std::max(pb, pa); ++k) {
      if (k <= pb) chain.push_back({name_of("beta", k), s.betas_pos[k - 1], 'b', false});
      if (k <= pa) chain.push_back({name_of("alpha", k), s.alphas_pos[k - 1], 'a', false});
    }
    return scan_chain(chain);
  }

  // Meromorphic: beta0 (>= 0), alpha0, beta_1, alpha_1, ...
  if (!s.betas_neg.empty() || !s.alphas_neg.empty())
    throw InvalidSpec("meromorphic spec carries negative-side factors");
  if (s.alpha0 && !s.beta0)
    return ChainViolation{"beta0 (required slot, absent)", "alpha0", Rational(0),
                          *s.alpha0};
  {
    const long zn = (s.beta0 ? 1 : 0) + static_cast<long>(s.betas_pos.size());
    const long pn = (s.alpha0 ? 1 : 0) + static_cast<long>(s.alphas_pos.size());
    if (pn != zn && pn != zn - 1)
      return ChainViolation{"count(poles)", "count(zeros)", Rational(pn),
                            Rational(zn)};
  }
  std::vector<ChainEntry> fb, fa;
  if (s.beta0) fb.push_back({"beta0", *s.beta0, 'b', true});
  if (s.alpha0) fa.push_back({"alpha0", *s.alpha0, 'a', false});
  for (std::size_t k = 0; k < s.betas_pos.size(); ++k)
    fb.push_back({name_of("beta", static_cast<long>(k + 1)), s.betas_pos[k], 'b', false});
  for (std::size_t k = 0; k < s.alphas_pos.size(); ++k)
    fa.push_back({name_of("alpha", static_cast<long>(k + 1)), s.alphas_pos[k], 'a', false});
  for (std::size_t k = 0; k < std::max(fb.size(), fa.size()); ++k) {
    if (k < fb.size()) chain.push_back(fb[k]);
    if (k < fa.size()) chain.push_back(fa[k]);
  }
  return scan_chain(chain);
}

namespace {

// Clears z-inverse factors: F = C z^e Q(z) / P(z).
struct ClearedForm {
  Rational C;
  long e = 0;
  Poly Q{Rational(1)}, P{Rational(1)};
  std::vector<std::pair<Rational, Rational>> pole_roots;  // (root z0, alpha label)
};

ClearedForm clear_form(const SFunctionSpec& s) {
  ClearedForm f;
  f.C = s.C;
  if (s.beta0) f.Q = poly_mul(f.Q, {*s.beta0, Rational(1)});
  if (s.alpha0) {
    f.P = poly_mul(f.P, {*s.alpha0, Rational(1)});
    f.pole_roots.push_back({-*s.alpha0, *s.alpha0});
  }
  for (const auto& b : s.betas_pos) f.Q = poly_mul(f.Q, {Rational(1), b.inverse()});
  for (const auto& a : s.alphas_pos) {
    f.P = poly_mul(f.P, {Rational(1), a.inverse()});
    f.pole_roots.push_back({-a, a});
  }
  for (const auto& b : s.betas_neg) {
    f.Q = poly_mul(f.Q, {b.inverse(), Rational(1)});
    f.e -= 1;
  }
  for (const auto& a : s.alphas_neg) {
    f.P = poly_mul(f.P, {a.inverse(), Rational(1)});
    f.pole_roots.push_back({-a.inverse(), a});
    f.e += 1;
  }
  return f;
}

}  // namespace

PartialFractions partial_fractions(const SFunctionSpec& s) {
  PartialFractions pf;
  pf.constant = Rational(0);
  pf.linear = Rational(0);

  if (s.kind == SKind::affine) {
    if (auto v = validate_interlacing(s))
      throw InvalidSpec("chain violation: " + v->lhs + " = " + v->lhs_value.str() +
                        " !< " + v->rhs + " = " + v->rhs_value.str());
    if (s.beta0) {
      pf.constant = s.C * *s.beta0;
      pf.linear = s.C;
    } else {
      pf.constant = s.C;
    }
    return pf;
  }

  // Degeneracies (shared factor, repeated pole) first, so ties report as
  // such instead of as chain-order violations.
  ClearedForm f = clear_form(s);
  Poly dP = poly_deriv(f.P);
  for (const auto& [z0, alpha] : f.pole_roots) {
    (void)alpha;
    if (poly_eval(f.Q, z0).is_zero())
      throw DegenerateSpec("numerator and denominator share the point " + z0.str());
    if (poly_eval(dP, z0).is_zero())
      throw DegenerateSpec("repeated pole at " + z0.str());
  }
  if (auto v = validate_interlacing(s))
    throw InvalidSpec("chain violation: " + v->lhs + " = " + v->lhs_value.str() +
                      " !< " + v->rhs + " = " + v->rhs_value.str());

  const long degQ = static_cast<long>(f.Q.size()) - 1;
  const long degP = static_cast<long>(f.P.size()) - 1;
  if (f.e < 0 || f.e + degQ > degP + 1)
    throw InvalidSpec("partial_fractions: form is not interlacing-bounded");

  if (f.e == 0) pf.constant = f.C * f.Q[0] / f.P[0];
  if (f.e + degQ == degP + 1) pf.linear = f.C * f.Q.back() / f.P.back();

  for (const auto& [z0, alpha] : f.pole_roots) {
    (void)alpha;
    // A = C z0^(e-1) Q(z0) / P'(z0)
    pf.terms.push_back(
        {z0, f.C * z0.pow(f.e - 1) * poly_eval(f.Q, z0) / poly_eval(dP, z0)});
  }
  std::sort(pf.terms.begin(), pf.terms.end(),
            [](const auto& a, const auto& b) { return a.pole < b.pole; });
  return pf;
}

namespace {

RationalComplex rc(const Rational& r) { return {r, Rational(0)}; }

}  // namespace

RationalComplex evaluate_exact(const SFunctionSpec& s, const RationalComplex& z) {
  if (s.kind == SKind::affine) {
    RationalComplex acc = rc(s.C);
    if (s.beta0) acc = acc * (z + rc(*s.beta0));
    return acc;
  }
  const bool needs_inverse = !s.betas_neg.empty() || !s.alphas_neg.empty();
  if (needs_inverse && z.is_zero())
    throw PoleHit("z = 0 with negative-side factors present");

  RationalComplex num = rc(s.C), den = rc(Rational(1));
  if (s.beta0) num = num * (z + rc(*s.beta0));
  if (s.alpha0) den = den * (z + rc(*s.alpha0));
  for (const auto& b : s.betas_pos) num = num * (rc(Rational(1)) + z * rc(b.inverse()));
  for (const auto& a : s.alphas_pos) den = den * (rc(Rational(1)) + z * rc(a.inverse()));
  if (needs_inverse) {
    RationalComplex zi = rc(Rational(1)) / z;
    for (const auto& b : s.betas_neg) num = num * (rc(Rational(1)) + zi * rc(b.inverse()));
    for (const auto& a : s.alphas_neg) den = den * (rc(Rational(1)) + zi * rc(a.inverse()));
  }
  if (den.is_zero()) throw PoleHit("z is a pole of the spec");
  return num / den;
}

std::complex<double> evaluate(const SFunctionSpec& s, const RationalComplex& z) {
  RationalComplex v = evaluate_exact(s, z);
  return {v.re.to_double(), v.im.to_double()};
}

Rational evaluate_real(const SFunctionSpec& s, const Rational& x) {
  return evaluate_exact(s, rc(x)).re;
}

Rational evaluate_pf(const PartialFractions& pf, const Rational& x) {
  Rational acc = pf.constant + pf.linear * x;
  for (const auto& t : pf.terms) acc += t.coeff * x / (x - t.pole);
  return acc;
}

HalfplaneReport check_halfplane_map(const SFunctionSpec& s, int n_samples,
                                    std::uint64_t seed) {
  SplitMix64 rng(seed);
  HalfplaneReport rep;
  rep.samples = n_samples;
  rep.min_im = Rational(0);
  bool first = true;
  for (int i = 0; i < n_samples; ++i) {
    RationalComplex z{rng.rational_in(Rational(-5), Rational(5), 6),
                      rng.rational_in(Rational(1, 8), Rational(5), 6)};
    RationalComplex v;
    try {
      v = evaluate_exact(s, z);
    } catch (const PoleHit&) {
      continue;  // poles sit on the negative real axis; cannot happen, but stay safe
    }
    if (first || v.im < rep.min_im) rep.min_im = v.im;
    first = false;
  }
  rep.all_nonnegative = rep.min_im >= Rational(0);
  return rep;
}

SFunctionSpec reciprocal_transform(const SFunctionSpec& s) {
  SFunctionSpec ns = normalize_spec(s);
  if (ns.C.is_zero()) throw DegenerateSpec("reciprocal of the zero function");

  if (ns.kind == SKind::affine) {
    SFunctionSpec out;
    if (!ns.beta0) {
      // z / C
      out.kind = SKind::affine;
      out.C = ns.C.inverse();
      out.beta0 = Rational(0);
    } else if (ns.beta0->is_zero()) {
      // z / (C z) = 1/C
      out.kind = SKind::affine;
      out.C = ns.C.inverse();
    } else {
      // z / (C (z+b)) = (1/(C b)) z / (1 + z/b)
      out.kind = SKind::meromorphic;
      out.C = (ns.C * *ns.beta0).inverse();
      out.beta0 = Rational(0);
      out.alphas_pos = {*ns.beta0};
    }
    return normalize_spec(out);
  }

  if (ns.kind == SKind::meromorphic) {
    SFunctionSpec out;
    out.kind = SKind::meromorphic;
    out.C = ns.C.inverse();
    out.betas_pos = ns.alphas_pos;
    out.alphas_pos = ns.betas_pos;
    if (!ns.beta0) out.beta0 = Rational(0);  // the z factor appears; else it cancels
    return normalize_spec(out);
  }

  if (ns.alphas_neg.empty())
    throw DegenerateSpec("no negative-side pole to pivot the relabeling on");
  const Rational am1 = ns.alphas_neg.front();
  SFunctionSpec out;
  out.kind = SKind::doubly_infinite;
  out.C = (ns.C * am1).inverse();
  out.betas_pos.push_back(am1.inverse());
  out.betas_pos.insert(out.betas_pos.end(), ns.alphas_pos.begin(), ns.alphas_pos.end());
  out.alphas_pos = ns.betas_pos;
  out.betas_neg.assign(ns.alphas_neg.begin() + 1, ns.alphas_neg.end());
  out.alphas_neg = ns.betas_neg;
  return normalize_spec(out);
}

namespace {

// Splits sorted multisets into (a minus common, b minus common).
std::pair<std::vector<Rational>, std::vector<Rational>> multiset_cancel(
    std::vector<Rational> a, std::vector<Rational> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Rational> ra, rb;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ra.push_back(a[i++]);
    } else {
      rb.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) ra.push_back(a[i]);
  for (; j < b.size(); ++j) rb.push_back(b[j]);
  return {ra, rb};
}

}  // namespace

std::variant<SFunctionSpec, NotSForm> ratio_classify(const EdreiSpec& p,
                                                     const EdreiSpec& q) {
  p.validate();
  q.validate();
  if (p.C.is_zero()) return NotSForm{"p is identically zero"};
  if (q.C.is_zero()) return normalize_spec(SFunctionSpec{SKind::affine, Rational(0)});
  if (p.A != q.A) return NotSForm{"exponential rate mismatch (A)"};
  if (p.A0 != q.A0) return NotSForm{"exponential rate mismatch (A0)"};

  auto [pp_res, qp_res] = multiset_cancel(p.poles_pos, q.poles_pos);
  if (!pp_res.empty() || !qp_res.empty()) return NotSForm{"residual pole factor"};
  auto [pn_res, qn_res] = multiset_cancel(p.poles_neg, q.poles_neg);
  if (!pn_res.empty() || !qn_res.empty()) return NotSForm{"residual pole factor"};

  auto [pz_pos, qz_pos] = multiset_cancel(p.zeros_pos, q.zeros_pos);
  auto [pz_neg, qz_neg] = multiset_cancel(p.zeros_neg, q.zeros_neg);

  const long jnet = q.j - p.j;
  SFunctionSpec spec;
  spec.C = q.C / p.C;
  spec.betas_pos = qz_pos;
  spec.alphas_pos = pz_pos;
  spec.betas_neg = qz_neg;
  spec.alphas_neg = pz_neg;
  if (jnet == 1) {
    if (!qz_neg.empty() || !pz_neg.empty()) return NotSForm{"unmatched z power"};
    spec.beta0 = Rational(0);
  } else if (jnet != 0) {
    return NotSForm{"unmatched z power"};
  }
  spec.kind = (!qz_neg.empty() || !pz_neg.empty()) ? SKind::doubly_infinite
                                                   : SKind::meromorphic;
  SFunctionSpec out = normalize_spec(spec);
  if (auto v = validate_interlacing(out))
    return NotSForm{"chain violation: " + v->lhs + " = " + v->lhs_value.str() +
                    " !< " + v->rhs + " = " + v->rhs_value.str()};
  return out;
}

}  // namespace tnn
