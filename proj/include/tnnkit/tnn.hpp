#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnnkit/section.hpp"

namespace tnn {

struct UntrustedEntry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A negative minor, addressed by infinite-matrix labels.
struct MinorWitness {
  std::vector<long> rows, cols;
  Rational value;
  bool operator==(const MinorWitness&) const = default;
};

enum class TnnStatus { all_nonnegative, negative_found, inconclusive_untrusted };

struct TnnReport {
  TnnStatus status = TnnStatus::all_nonnegative;
  int max_order = 0;  // effective order cap used for the enumeration
  std::optional<MinorWitness> witness;
  std::uint64_t minors_evaluated = 0;
};

// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
Rational det_exact(const DenseMatrix& m);

// Determinant of the labeled square submatrix; every selected entry must be
// trusted (throws UntrustedEntry otherwise, ShapeMismatch for bad selections).
Rational det_exact(const MatrixSection& m, const std::vector<long>& rows,
                   const std::vector<long>& cols);

// Evaluates every minor of order 1..min(max_order, trusted rows, trusted
// cols), restricted to fully trusted rows/columns, in ascending order and
// lexicographic (row combination, column combination) order within each
// order.  Stops at the first negative minor.  Rows or columns skipped for
// trust reasons downgrade a clean result to inconclusive_untrusted.
TnnReport check_tnn(const MatrixSection& m, int max_order);

// Growth schedule for the negative-minor search over Hurwitz-type sections.
struct SectionSchedule {
  int max_size = 12;   // largest square section, stepping by 2 from 2
  int max_order = 5;   // minor order cap per section
  std::vector<long> col_anchor_divisors = {0, 2, 1};  // shift cols by -size/d
};

// Searches sections of the two-series matrix for a negative minor, growing
// the section size and shifting the column anchor per the schedule.  Returns
// the first witness found, or nullopt when the budget is exhausted.  When
// minors_tried is given, the minors evaluated along the way are added to it.
std::optional<MinorWitness> find_negative_minor(const LaurentWindow& p,
                                                const LaurentWindow& q,
                                                const SectionSchedule& budget,
                                                std::uint64_t* minors_tried = nullptr);

// Number of minors of order 1..k_max of an n x m matrix:
// sum_k C(n,k) * C(m,k).
std::uint64_t minor_count(long n, long m, int k_max);

}  // namespace tnn
