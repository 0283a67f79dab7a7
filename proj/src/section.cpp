#include "tnnkit/section.hpp"

namespace tnn {

namespace {

struct EntryRead {
  Rational value;
  bool trusted;
};

EntryRead read_coeff(const LaurentWindow& w, long exponent, bool lenient,
                     long i, long j) {
  if (exponent >= w.lo() && exponent <= w.hi())
    return {w.at(exponent), !w.approx()};
  if ((exponent < w.lo() && w.exact_left()) ||
      (exponent > w.hi() && w.exact_right()))
    return {Rational(0), true};
  if (!lenient)
    throw OutOfWindow("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                      "): exponent " + std::to_string(exponent) +
                      " escapes the window's determined range");
  return {Rational(0), false};
}

MatrixSection blank(const std::vector<long>& rows, const std::vector<long>& cols) {
  MatrixSection s;
  s.row_labels = rows;
  s.col_labels = cols;
  const long m = static_cast<long>(rows.size()), n = static_cast<long>(cols.size());
  if (m == 0 || n == 0) throw ShapeMismatch("section: empty row or column list");
  s.entries.resize(m, n);
  s.provenance.resize(static_cast<std::size_t>(m * n));
  s.trusted_map.assign(static_cast<std::size_t>(m * n), 1);
  return s;
}

}  // namespace

MatrixSection toeplitz_section(const LaurentWindow& f,
                               const std::vector<long>& rows,
                               const std::vector<long>& cols, bool lenient) {
  MatrixSection s = blank(rows, cols);
  const long n = s.cols();
  for (long i = 0; i < s.rows(); ++i)
    for (long j = 0; j < n; ++j) {
      const long e = cols[j] - rows[i];
      EntryRead r = read_coeff(f, e, lenient, rows[i], cols[j]);
      s.entries(i, j) = r.value;
      s.trusted_map[static_cast<std::size_t>(i * n + j)] = r.trusted ? 1 : 0;
      s.provenance[static_cast<std::size_t>(i * n + j)] = {'f', e};
    }
  return s;
}

MatrixSection hurwitz_section(const LaurentWindow& p, const LaurentWindow& q,
                              const std::vector<long>& rows,
                              const std::vector<long>& cols, bool lenient) {
  MatrixSection s = blank(rows, cols);
  const long n = s.cols();
  for (long i = 0; i < s.rows(); ++i) {
    const long r = rows[i];
    const bool odd = (r % 2) != 0;
    const long half = odd ? (r + 1) / 2 : r / 2;  // exact: r+1 resp. r is even
    const LaurentWindow& w = odd ? p : q;
    for (long j = 0; j < n; ++j) {
      const long e = cols[j] - half;
      EntryRead rd = read_coeff(w, e, lenient, r, cols[j]);
      s.entries(i, j) = rd.value;
      s.trusted_map[static_cast<std::size_t>(i * n + j)] = rd.trusted ? 1 : 0;
      s.provenance[static_cast<std::size_t>(i * n + j)] = {odd ? 'p' : 'q', e};
    }
  }
  return s;
}

MatrixSection selector_section(const Rational& A, const Rational& B,
                               long n_rows, long n_cols) {
  if (n_rows < 1 || n_cols < 1)
    throw ShapeMismatch("selector_section: size must be positive");
  std::vector<long> rows(n_rows), cols(n_cols);
  for (long i = 0; i < n_rows; ++i) rows[i] = i + 1;
  for (long j = 0; j < n_cols; ++j) cols[j] = j + 1;
  MatrixSection s = blank(rows, cols);
  for (long i = 0; i < n_rows; ++i)
    for (long j = 0; j < n_cols; ++j) {
      const long cl = j + 1, rl = i + 1;
      Rational v(0);
      if (cl == 2 * rl - 1)
        v = A;
      else if (cl == 2 * rl)
        v = B;
      s.entries(i, j) = v;
      s.provenance[static_cast<std::size_t>(i * n_cols + j)] = {'-', 0};
    }
  return s;
}

}  // namespace tnn
