#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tnnkit/laurent.hpp"
#include "tnnkit/rational.hpp"

namespace tnn {

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using DenseMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Which series an entry was read from, and at which exponent.
struct Provenance {
  char series = '-';  // 'f', 'p', 'q', or '-' for structural entries
  long exponent = 0;
};

// Finite rectangular window into one of the infinite structured matrices.
// Row/column labels are the indices in the infinite matrix; they need not be
// contiguous.  Entries read from outside a source window's determined range
// are stored as zero placeholders and marked untrusted.
struct MatrixSection {
  DenseMatrix entries;
  std::vector<long> row_labels, col_labels;
  std::vector<Provenance> provenance;     // row-major
  std::vector<std::uint8_t> trusted_map;  // row-major, 1 = exact entry

  long rows() const { return entries.rows(); }
  long cols() const { return entries.cols(); }
  bool entry_trusted(long i, long j) const {
    return trusted_map[static_cast<std::size_t>(i * cols() + j)] != 0;
  }
  const Provenance& prov(long i, long j) const {
    return provenance[static_cast<std::size_t>(i * cols() + j)];
  }
  bool row_trusted(long i) const {
    for (long j = 0; j < cols(); ++j)
      if (!entry_trusted(i, j)) return false;
    return true;
  }
  bool col_trusted(long j) const {
    for (long i = 0; i < rows(); ++i)
      if (!entry_trusted(i, j)) return false;
    return true;
  }
  bool all_trusted() const {
    for (auto t : trusted_map)
      if (!t) return false;
    return true;
  }
};

// Toeplitz section: entry (i, j) = f_{col_label(j) - row_label(i)}.
// In strict mode an exponent outside f's determined range throws OutOfWindow;
// lenient mode stores an untrusted zero placeholder instead.
MatrixSection toeplitz_section(const LaurentWindow& f,
                               const std::vector<long>& rows,
                               const std::vector<long>& cols,
                               bool lenient = false);

// Hurwitz-type section of the two-series matrix: infinite row 2i-1 reads
// p-coefficient a_{j-i}, row 2i reads q-coefficient b_{j-i}; row 1 is the
// a_0 a_1 ... row.  Labels may be any integers, including <= 0.
MatrixSection hurwitz_section(const LaurentWindow& p, const LaurentWindow& q,
                              const std::vector<long>& rows,
                              const std::vector<long>& cols,
                              bool lenient = false);

// Selector section: entry (i, j) = A when j = 2i-1, B when j = 2i, else 0,
// on labels 1..n_rows, 1..n_cols.
MatrixSection selector_section(const Rational& A, const Rational& B,
                               long n_rows, long n_cols);

}  // namespace tnn
