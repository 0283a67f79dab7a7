#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnnkit/laurent.hpp"
#include "tnnkit/rng.hpp"
#include "tnnkit/section.hpp"
#include "tnnkit/sfunc.hpp"
#include "tnnkit/tnn.hpp"

namespace tnn {

struct ScenarioConfig {
  std::uint64_t master_seed = 1;
  int trials = 25;
  int n_zeros = 3;  // zero/pole pairs drawn per side, at most
  Rational value_lo = Rational(1, 4);
  Rational value_hi = Rational(8);
  long max_den = 6;
  long section_size = 8;
  int max_minor_order = 4;
  bool allow_shared_factor = false;
  int trunc = 24;
};

// A pair of coefficient series whose ratio q/p interlaces, so the two-series
// matrix built from them should pass every minor check.
struct InterlacedPair {
  EdreiSpec p, q;
};

InterlacedPair gen_interlaced_pair(SplitMix64& rng, const ScenarioConfig& cfg);

struct TrialFailure {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct VerificationReport {
  std::string scenario;
  std::uint64_t master_seed = 0;
  int trials = 0;
  long section_size = 0;
  int max_minor_order = 0;
  std::uint64_t minors_evaluated = 0;
  int witnesses_found = 0;  // only the reverse scenario counts these
  std::vector<TrialFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Seeded no-false-positive run: every generated interlaced pair must yield an
// all-nonnegative section verdict.
VerificationReport verify_forward(const ScenarioConfig& cfg);

// Seeded detection run: each trial corrupts an interlaced pair (adjacent
// zero/pole swap, or mismatched exponential rates) and hunts for a negative
// minor.  A trial with no witness inside the search budget is a failure.
VerificationReport verify_reverse(const ScenarioConfig& cfg);

// Structural suites, all seeded: "gap", "degenerate", "ratio", "symmetry",
// "pole".  Each trial is a failure if its invariant does not hold exactly.
VerificationReport verify_structural(const std::string& suite,
                                     const ScenarioConfig& cfg);

// An internal zero of a coefficient sequence, with a 2x2 certificate minor:
// rows {0, 1}, cols {k0+1, k1} evaluates to -c(k0)*c(k1) in the single-series
// matrix.  A lone negative coefficient is reported as a 1x1 certificate.
struct GapWitness {
  long support_lo = 0;  // last nonzero exponent before the gap
  long support_hi = 0;  // first nonzero exponent after the gap
  MinorWitness minor;
};
std::optional<GapWitness> check_gap_lemma(const LaurentWindow& w);

// Cross-multiplied monotonicity of the ratio q_n / p_n over the shared
// determined range: a break at n means p_n q_{n+1} < p_{n+1} q_n, which is a
// negative 2x2 minor of the two-series matrix.
struct RatioChainReport {
  bool ok = true;
  long checked = 0;
  std::optional<long> first_break;
};
RatioChainReport check_ratio_chain(const LaurentWindow& p, const LaurentWindow& q);

// True when every minor of exactly the given order vanishes.  All entries
// must be trusted.
bool check_degenerate(const MatrixSection& m, int order);

}  // namespace tnn
