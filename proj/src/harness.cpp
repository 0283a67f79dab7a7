#include "tnnkit/harness.hpp"

#include <algorithm>
#include <set>

#include "tnnkit/transforms.hpp"

namespace tnn {

namespace {

std::string format_labels(const std::vector<long>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "}";
}

std::string format_witness(const MinorWitness& w) {
  return "rows " + format_labels(w.rows) + " cols " + format_labels(w.cols) +
         " value " + w.value.str();
}

std::vector<long> iota_labels(long from, long count) {
  std::vector<long> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = from + i;
  return v;
}

VerificationReport make_report(const char* scenario, const ScenarioConfig& cfg) {
  VerificationReport rep;
  rep.scenario = scenario;
  rep.master_seed = cfg.master_seed;
  rep.trials = cfg.trials;
  rep.section_size = cfg.section_size;
  rep.max_minor_order = cfg.max_minor_order;
  return rep;
}

}  // namespace

InterlacedPair gen_interlaced_pair(SplitMix64& rng, const ScenarioConfig& cfg) {
  InterlacedPair pair;

  // Positive chain values; who takes the smallest depends on whether the
  // ratio q/p picks up a zero at the origin, so assignment waits until the
  // z-power draws below.  A coin trims one value off the top.
  const int m = static_cast<int>(rng.range(1, std::max(1, cfg.n_zeros)));
  const bool extra_beta = rng.coin();
  const int count = 2 * m - (extra_beta ? 1 : 0);
  const std::vector<Rational> vals =
      rng.distinct_ascending(cfg.value_lo, cfg.value_hi, count, cfg.max_den);

  // Sometimes extend the chain below zero: values there are reciprocals, and
  // walking down from beta_1 the letters go alpha, beta, alpha, ...
  if (rng.coin()) {
    const int k = static_cast<int>(rng.range(1, 2));
    const bool deepest_alpha = rng.coin();
    const int count2 = 2 * k - (deepest_alpha ? 1 : 0);
    const Rational cap = vals[0] * Rational(7, 8);
    const std::vector<Rational> ws =
        rng.distinct_ascending(cap / Rational(16), cap, count2, 4 * cfg.max_den);
    for (int off = 0; off < count2; ++off) {
      const Rational v = ws[static_cast<std::size_t>(count2 - 1 - off)].inverse();
      if (off % 2 == 0)
        pair.p.zeros_neg.push_back(v);
      else
        pair.q.zeros_neg.push_back(v);
    }
  }

  pair.p.C = rng.rational_in(Rational(1, 2), Rational(2), cfg.max_den);
  pair.q.C = rng.rational_in(Rational(1, 2), Rational(2), cfg.max_den);

  // A shared power of z shifts both series; one extra on q is the ratio's
  // zero at the origin, which needs an all-positive-side chain.
  if (rng.coin()) {
    pair.p.j = 1;
    pair.q.j = 1;
  }
  const bool has_neg = !pair.p.zeros_neg.empty() || !pair.q.zeros_neg.empty();
  const bool origin_zero = !has_neg && rng.below(4) == 0;
  if (origin_zero) pair.q.j += 1;

  // Without the origin zero the ratio's chain starts with one of q's zeros:
  // beta_1 < alpha_1 < beta_2 < ...  With it, the origin itself is the first
  // zero, and p's zeros interlace from below: alpha_0 < beta_1 < alpha_1 < ...
  for (int i = 0; i < count; ++i) {
    const bool to_q = (i % 2 == 0) != origin_zero;
    (to_q ? pair.q : pair.p).zeros_pos.push_back(vals[static_cast<std::size_t>(i)]);
  }

  // A shared exponential factor cancels in the ratio.  Only one side at a
  // time, so coefficient windows stay exact.
  const std::uint64_t exp_kind = rng.below(8);
  if (exp_kind == 0) {
    const Rational A = rng.rational_in(Rational(1, 4), Rational(2), cfg.max_den);
    pair.p.A = A;
    pair.q.A = A;
  } else if (exp_kind == 1) {
    const Rational A0 = rng.rational_in(Rational(1, 4), Rational(2), cfg.max_den);
    pair.p.A0 = A0;
    pair.q.A0 = A0;
  }

  if (cfg.allow_shared_factor && rng.coin()) {
    EdreiSpec g;
    if (rng.coin())
      g.zeros_pos.push_back(rng.rational_in(cfg.value_lo, cfg.value_hi, cfg.max_den));
    else
      g.poles_pos.push_back(rng.rational_in(Rational(8), Rational(16), cfg.max_den));
    pair.p = edrei_mul(pair.p, g);
    pair.q = edrei_mul(pair.q, g);
  }
  return pair;
}

VerificationReport verify_forward(const ScenarioConfig& cfg) {
  VerificationReport rep = make_report("forward", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = sub_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    SplitMix64 rng(seed);
    try {
      const InterlacedPair pair = gen_interlaced_pair(rng, cfg);
      const long size = cfg.section_size;
      const long lo = -(size + 1) / 2 - 2;
      const long hi = size + 2;
      const LaurentWindow wp = edrei_coeffs(pair.p, lo, hi, cfg.trunc);
      const LaurentWindow wq = edrei_coeffs(pair.q, lo, hi, cfg.trunc);
      const MatrixSection sect =
          hurwitz_section(wp, wq, iota_labels(1, size), iota_labels(1, size));
      const TnnReport r = check_tnn(sect, cfg.max_minor_order);
      rep.minors_evaluated += r.minors_evaluated;
      if (r.status == TnnStatus::negative_found)
        rep.failures.push_back(
            {t, seed, "negative minor: " + format_witness(*r.witness)});
      else if (r.status == TnnStatus::inconclusive_untrusted)
        rep.failures.push_back({t, seed, "section has untrusted entries"});
    } catch (const std::exception& e) {
      rep.failures.push_back({t, seed, std::string("exception: ") + e.what()});
    }
  }
  return rep;
}

VerificationReport verify_reverse(const ScenarioConfig& cfg) {
  VerificationReport rep = make_report("reverse", cfg);
  SectionSchedule sched;
  // Near-miss corruptions can hide until order 5, so the requested order
  // only ever widens the search.
  sched.max_order = std::max(cfg.max_minor_order, sched.max_order);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = sub_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    SplitMix64 rng(seed);
    try {
      InterlacedPair pair = gen_interlaced_pair(rng, cfg);
      const bool can_swap =
          !pair.p.zeros_pos.empty() && !pair.q.zeros_pos.empty();
      if (rng.coin() && can_swap) {
        // Swapping a zero across the pair reverses one adjacent inequality.
        const std::size_t nswap =
            std::min(pair.p.zeros_pos.size(), pair.q.zeros_pos.size());
        const auto idx = static_cast<std::size_t>(rng.below(nswap));
        std::swap(pair.p.zeros_pos[idx], pair.q.zeros_pos[idx]);
        std::sort(pair.p.zeros_pos.begin(), pair.p.zeros_pos.end());
        std::sort(pair.q.zeros_pos.begin(), pair.q.zeros_pos.end());
      } else {
        // Rates no longer cancel.  Drop any z-inverse rate so both windows
        // stay single-sided and exact.
        pair.p.A0 = Rational(0);
        pair.q.A0 = Rational(0);
        pair.p.A = pair.q.A + Rational(1);
      }
      const long lo = -(sched.max_size + sched.max_size / 2 + 4);
      const long hi = sched.max_size + 4;
      const LaurentWindow wp = edrei_coeffs(pair.p, lo, hi, cfg.trunc);
      const LaurentWindow wq = edrei_coeffs(pair.q, lo, hi, cfg.trunc);
      const auto witness = find_negative_minor(wp, wq, sched, &rep.minors_evaluated);
      if (!witness) {
        rep.failures.push_back({t, seed, "no negative minor within budget"});
        continue;
      }
      ++rep.witnesses_found;
      const MatrixSection sect =
          hurwitz_section(wp, wq, witness->rows, witness->cols);
      const Rational again = det_exact(sect, witness->rows, witness->cols);
      if (again != witness->value || !(again < Rational(0)))
        rep.failures.push_back(
            {t, seed, "witness failed re-evaluation: " + format_witness(*witness)});
    } catch (const std::exception& e) {
      rep.failures.push_back({t, seed, std::string("exception: ") + e.what()});
    }
  }
  return rep;
}

std::optional<GapWitness> check_gap_lemma(const LaurentWindow& w) {
  for (long n = w.lo(); n <= w.hi(); ++n)
    if (w.at(n) < Rational(0))
      return GapWitness{n, n, MinorWitness{{0}, {n}, w.at(n)}};
  std::optional<long> prev;
  for (long n = w.lo(); n <= w.hi(); ++n) {
    if (w.at(n).is_zero()) continue;
    if (prev && n - *prev > 1) {
      const Rational value = -(w.at(*prev) * w.at(n));
      return GapWitness{*prev, n, MinorWitness{{0, 1}, {*prev + 1, n}, value}};
    }
    prev = n;
  }
  return std::nullopt;
}

RatioChainReport check_ratio_chain(const LaurentWindow& p, const LaurentWindow& q) {
  long lo = std::max(p.lo(), q.lo());
  long hi = std::min(p.hi(), q.hi());
  if (p.exact_left() && q.exact_left()) lo = std::min(p.lo(), q.lo()) - 1;
  if (p.exact_right() && q.exact_right()) hi = std::max(p.hi(), q.hi()) + 1;
  RatioChainReport rep;
  for (long n = lo; n < hi; ++n) {
    const Rational lhs = p.coeff(n) * q.coeff(n + 1);
    const Rational rhs = p.coeff(n + 1) * q.coeff(n);
    ++rep.checked;
    if (lhs < rhs) {
      rep.ok = false;
      rep.first_break = n;
      break;
    }
  }
  return rep;
}

namespace {

bool next_combination(std::vector<long>& idx, long n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - (k - i)) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool check_degenerate(const MatrixSection& m, int order) {
  if (!m.all_trusted())
    throw UntrustedEntry("check_degenerate needs a fully trusted section");
  if (order < 1 || order > std::min(m.rows(), m.cols()))
    throw ShapeMismatch("check_degenerate: order out of range");
  std::vector<long> rsel(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) rsel[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<long> csel(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) csel[static_cast<std::size_t>(i)] = i;
    do {
      DenseMatrix sub(order, order);
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
          sub(i, j) = m.entries(rsel[static_cast<std::size_t>(i)],
                                csel[static_cast<std::size_t>(j)]);
      if (!det_exact(sub).is_zero()) return false;
    } while (next_combination(csel, m.cols()));
  } while (next_combination(rsel, m.rows()));
  return true;
}

namespace {

using TrialBody = void (*)(SplitMix64&, const ScenarioConfig&, std::string&);

void run_trials(VerificationReport& rep, const ScenarioConfig& cfg, TrialBody body) {
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = sub_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    SplitMix64 rng(seed);
    std::string problem;
    try {
      body(rng, cfg, problem);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (!problem.empty()) rep.failures.push_back({t, seed, problem});
  }
}

void gap_trial(SplitMix64& rng, const ScenarioConfig& cfg, std::string& problem) {
  const long base = rng.range(-3, 3);
  const long left = rng.range(1, 2), gap = rng.range(1, 3), right = rng.range(1, 2);
  std::vector<Rational> coeffs;
  for (long i = 0; i < left; ++i)
    coeffs.push_back(rng.rational_in(Rational(1, 4), Rational(4), cfg.max_den));
  for (long i = 0; i < gap; ++i) coeffs.push_back(Rational(0));
  for (long i = 0; i < right; ++i)
    coeffs.push_back(rng.rational_in(Rational(1, 4), Rational(4), cfg.max_den));
  const LaurentWindow w = LaurentWindow::polynomial(base, coeffs);

  const auto gw = check_gap_lemma(w);
  if (!gw) {
    problem = "no gap reported";
    return;
  }
  const long k0 = base + left - 1, k1 = base + left + gap;
  if (gw->support_lo != k0 || gw->support_hi != k1) {
    problem = "gap located at the wrong exponents";
    return;
  }
  if (gw->minor.value != -(w.at(k0) * w.at(k1)) || !(gw->minor.value < Rational(0))) {
    problem = "certificate value is wrong";
    return;
  }
  const MatrixSection sect = toeplitz_section(w, gw->minor.rows, gw->minor.cols);
  if (det_exact(sect, gw->minor.rows, gw->minor.cols) != gw->minor.value) {
    problem = "certificate does not re-evaluate to the reported value";
    return;
  }
  const MatrixSection wide =
      toeplitz_section(w, iota_labels(0, 2), iota_labels(k0, k1 - k0 + 1));
  if (check_tnn(wide, 2).status != TnnStatus::negative_found)
    problem = "minor search misses the gap certificate";
}

void degenerate_trial(SplitMix64& rng, const ScenarioConfig& cfg, std::string& problem) {
  const Rational ratio = rng.rational_in(Rational(1, 3), Rational(3), cfg.max_den);
  const Rational scale = rng.rational_in(Rational(1, 2), Rational(2), cfg.max_den);
  const long size = rng.range(3, 5);
  const long wlo = 1 - size, whi = size - 1;
  std::vector<Rational> coeffs;
  for (long n = wlo; n <= whi; ++n) coeffs.push_back(scale * ratio.pow(n));
  const LaurentWindow w(wlo, whi, std::move(coeffs), false, false);

  const MatrixSection sect =
      toeplitz_section(w, iota_labels(1, size), iota_labels(1, size));
  if (!check_degenerate(sect, 2)) {
    problem = "an order-2 minor of a one-term-ratio section is nonzero";
    return;
  }
  const TnnReport r = check_tnn(sect, cfg.max_minor_order);
  if (r.status != TnnStatus::all_nonnegative)
    problem = "one-term-ratio section failed the minor sweep";
}

void ratio_trial(SplitMix64& rng, const ScenarioConfig& cfg, std::string& problem) {
  const InterlacedPair pair = gen_interlaced_pair(rng, cfg);
  const LaurentWindow wp = edrei_coeffs(pair.p, -10, 14, cfg.trunc);
  const LaurentWindow wq = edrei_coeffs(pair.q, -10, 14, cfg.trunc);
  const RatioChainReport rc = check_ratio_chain(wp, wq);
  if (!rc.ok)
    problem = "ratio chain breaks at n=" + std::to_string(*rc.first_break);
  else if (rc.checked == 0)
    problem = "ratio chain had nothing to check";
}

void symmetry_trial(SplitMix64& rng, const ScenarioConfig& cfg, std::string& problem) {
  const InterlacedPair pair = gen_interlaced_pair(rng, cfg);
  const LaurentWindow wp = edrei_coeffs(pair.p, -24, 24, cfg.trunc);
  const LaurentWindow wq = edrei_coeffs(pair.q, -24, 24, cfg.trunc);

  const long t = rng.range(1, 4);
  const long rho = 2 * t + 1, gamma = t + 1;
  auto pick_labels = [&rng](long lo, long hi, int n) {
    std::set<long> got;
    while (static_cast<int>(got.size()) < n) got.insert(rng.range(lo, hi));
    return std::vector<long>(got.begin(), got.end());
  };
  const std::vector<long> rsel = pick_labels(-2, rho + 2, 4);
  const std::vector<long> csel = pick_labels(-2, 6, 4);

  // Reversing both series is reflection through row rho, column (rho+1)/2.
  std::vector<long> rref, cref;
  for (long r : rsel) rref.push_back(rho - r);
  for (long c : csel) cref.push_back(gamma - c);
  const MatrixSection lhs =
      hurwitz_section(reverse_series(wq), reverse_series(wp), rsel, csel);
  const MatrixSection rhs = hurwitz_section(wp, wq, rref, cref);
  if (!(lhs.entries == rhs.entries)) {
    problem = "reversal reflection mismatch";
    return;
  }

  // Swapping the series and multiplying the second by z is a one-row shift.
  std::vector<long> rplus;
  for (long r : rsel) rplus.push_back(r + 1);
  const MatrixSection lhs2 =
      hurwitz_section(wq, shift_mul_z(wp, 1, Rational(1)), rsel, csel);
  const MatrixSection rhs2 = hurwitz_section(wp, wq, rplus, csel);
  if (!(lhs2.entries == rhs2.entries)) problem = "swap-shift mismatch";
}

void pole_trial(SplitMix64& rng, const ScenarioConfig& cfg, std::string& problem) {
  EdreiSpec f;
  f.C = rng.rational_in(Rational(1, 2), Rational(2), cfg.max_den);
  const bool right_side = rng.coin();
  const int npoles = static_cast<int>(rng.range(1, 2));
  const int nzeros = static_cast<int>(rng.range(0, 2));
  auto& poles = right_side ? f.poles_pos : f.poles_neg;
  poles = rng.distinct_ascending(Rational(1, 2), Rational(8), npoles, cfg.max_den);
  auto& zeros = rng.coin() ? f.zeros_pos : f.zeros_neg;
  if (nzeros > 0)
    zeros = rng.distinct_ascending(Rational(1, 2), Rational(8), nzeros, cfg.max_den);

  const LaurentWindow wf = edrei_coeffs(f, -10, 10, cfg.trunc);
  const Rational where = poles[static_cast<std::size_t>(rng.below(poles.size()))];
  const LaurentWindow w1 = right_side ? remove_pole_right(wf, where)
                                      : remove_pole_left(wf, where);
  const EdreiSpec f2 =
      right_side ? remove_pole_right(f, where) : remove_pole_left(f, where);
  const LaurentWindow w2 = edrei_coeffs(f2, w1.lo(), w1.hi(), cfg.trunc);
  for (long n = w1.lo(); n <= w1.hi(); ++n) {
    if (w1.at(n) != w2.at(n)) {
      problem = "window-level and factor-level removal disagree at exponent " +
                std::to_string(n);
      return;
    }
  }

  const auto labels = iota_labels(1, 4);
  const TnnReport before = check_tnn(toeplitz_section(wf, labels, labels), 3);
  const TnnReport after = check_tnn(toeplitz_section(w1, labels, labels), 3);
  if (before.status != TnnStatus::all_nonnegative)
    problem = "section was not clean before the removal";
  else if (after.status != TnnStatus::all_nonnegative)
    problem = "pole removal broke the section verdict";
}

}  // namespace

VerificationReport verify_structural(const std::string& suite,
                                     const ScenarioConfig& cfg) {
  VerificationReport rep = make_report("structural", cfg);
  rep.scenario = "structural-" + suite;
  if (suite == "gap")
    run_trials(rep, cfg, &gap_trial);
  else if (suite == "degenerate")
    run_trials(rep, cfg, &degenerate_trial);
  else if (suite == "ratio")
    run_trials(rep, cfg, &ratio_trial);
  else if (suite == "symmetry")
    run_trials(rep, cfg, &symmetry_trial);
  else if (suite == "pole")
    run_trials(rep, cfg, &pole_trial);
  else
    throw InvalidSpec("unknown structural suite: " + suite);
  return rep;
}

}  // namespace tnn
