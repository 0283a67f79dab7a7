#include "tnnkit/tnn.hpp"

#include <algorithm>
#include <unordered_map>

namespace tnn {

Rational det_exact(const DenseMatrix& m) {
  const long n = m.rows();
  if (n < 1 || m.cols() != n)
    throw ShapeMismatch("det_exact: matrix must be square and nonempty");
  DenseMatrix a = m;
  Rational prev(1);
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (a(k, k).is_zero()) {
      long piv = -1;
      for (long i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Rational(0);
      a.row(k).swap(a.row(piv));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  Rational d = a(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

namespace {

long label_position(const std::vector<long>& labels, long label,
                    const char* what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw ShapeMismatch(std::string("det_exact: ") + what + " label " +
                        std::to_string(label) + " not in section");
  return static_cast<long>(it - labels.begin());
}

}  // namespace

Rational det_exact(const MatrixSection& m, const std::vector<long>& rows,
                   const std::vector<long>& cols) {
  if (rows.empty() || rows.size() != cols.size())
    throw ShapeMismatch("det_exact: need equal, nonempty row and column lists");
  const long k = static_cast<long>(rows.size());
  DenseMatrix sub(k, k);
  for (long i = 0; i < k; ++i) {
    const long pi = label_position(m.row_labels, rows[i], "row");
    for (long j = 0; j < k; ++j) {
      const long pj = label_position(m.col_labels, cols[j], "col");
      if (!m.entry_trusted(pi, pj))
        throw UntrustedEntry("det_exact: entry at row label " +
                             std::to_string(rows[i]) + ", col label " +
                             std::to_string(cols[j]) +
                             " is truncation-affected");
      sub(i, j) = m.entries(pi, pj);
    }
  }
  return det_exact(sub);
}

namespace {

// Minor enumeration shared state.  Minors are evaluated order by order; each
// order-k determinant expands along its first row using the cached order-k-1
// determinants, so the whole sweep is division-free.  Values and visiting
// order are identical to evaluating each minor independently.
struct MinorEnumerator {
  const MatrixSection& m;
  std::vector<long> rpos, cpos;  // trusted positions, ascending
  // Key: positions packed as two 32-bit masks (sections stay well below 32).
  std::unordered_map<std::uint64_t, Rational> prev, cur;

  explicit MinorEnumerator(const MatrixSection& sec) : m(sec) {
    for (long i = 0; i < sec.rows(); ++i)
      if (sec.row_trusted(i)) rpos.push_back(i);
    for (long j = 0; j < sec.cols(); ++j)
      if (sec.col_trusted(j)) cpos.push_back(j);
  }

  static std::uint64_t key(std::uint32_t rmask, std::uint32_t cmask) {
    return (static_cast<std::uint64_t>(rmask) << 32) | cmask;
  }

  Rational minor_det(const std::vector<long>& rs, const std::vector<long>& cs,
                     std::uint32_t rmask, std::uint32_t cmask) {
    const std::size_t k = rs.size();
    if (k == 1) return m.entries(rs[0], cs[0]);
    Rational acc(0);
    const std::uint32_t rrest = rmask & (rmask - 1);  // drop lowest row
    int sgn = 1;
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& e = m.entries(rs[0], cs[j]);
      if (!e.is_zero()) {
        const Rational& sub = prev.at(key(rrest, cmask & ~(1u << cs[j])));
        acc += (sgn > 0) ? e * sub : -(e * sub);
      }
      sgn = -sgn;
    }
    return acc;
  }
};

template <typename Fn>
bool for_each_combination(long n, int k, Fn&& fn) {
  std::vector<long> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t minor_count(long n, long m, int k_max) {
  std::uint64_t total = 0;
  const long kcap = std::min<long>(k_max, std::min(n, m));
  for (long k = 1; k <= kcap; ++k) {
    auto choose = [](long a, long b) {
      std::uint64_t r = 1;
      for (long i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / i;
      return r;
    };
    total += choose(n, k) * choose(m, k);
  }
  return total;
}

TnnReport check_tnn(const MatrixSection& m, int max_order) {
  if (max_order < 1) throw ShapeMismatch("check_tnn: max_order must be >= 1");
  if (m.rows() > 32 || m.cols() > 32)
    throw ShapeMismatch("check_tnn: sections larger than 32x32 not supported");
  MinorEnumerator en(m);
  const bool skipped_any = en.rpos.size() < static_cast<std::size_t>(m.rows()) ||
                           en.cpos.size() < static_cast<std::size_t>(m.cols());
  TnnReport rep;
  rep.max_order = static_cast<int>(
      std::min<std::size_t>(max_order, std::min(en.rpos.size(), en.cpos.size())));

  std::vector<long> rsel, csel;
  for (int k = 1; k <= rep.max_order; ++k) {
    en.cur.clear();
    bool keep_going = for_each_combination(
        static_cast<long>(en.rpos.size()), k, [&](const std::vector<long>& ri) {
          rsel.clear();
          std::uint32_t rmask = 0;
          for (long i : ri) {
            rsel.push_back(en.rpos[i]);
            rmask |= 1u << en.rpos[i];
          }
          return for_each_combination(
              static_cast<long>(en.cpos.size()), k,
              [&](const std::vector<long>& ci) {
                csel.clear();
                std::uint32_t cmask = 0;
                for (long j : ci) {
                  csel.push_back(en.cpos[j]);
                  cmask |= 1u << en.cpos[j];
                }
                Rational d = en.minor_det(rsel, csel, rmask, cmask);
                ++rep.minors_evaluated;
                if (d.sign() < 0) {
                  MinorWitness w;
                  for (long i : rsel) w.rows.push_back(m.row_labels[i]);
                  for (long j : csel) w.cols.push_back(m.col_labels[j]);
                  w.value = std::move(d);
                  rep.witness = std::move(w);
                  rep.status = TnnStatus::negative_found;
                  return false;
                }
                en.cur.emplace(MinorEnumerator::key(rmask, cmask), std::move(d));
                return true;
              });
        });
    if (!keep_going) return rep;
    en.prev = std::move(en.cur);
  }
  rep.status = skipped_any ? TnnStatus::inconclusive_untrusted
                           : TnnStatus::all_nonnegative;
  return rep;
}

std::optional<MinorWitness> find_negative_minor(const LaurentWindow& p,
                                                const LaurentWindow& q,
                                                const SectionSchedule& budget,
                                                std::uint64_t* minors_tried) {
  for (int size = 2; size <= budget.max_size; size += 2) {
    for (long div : budget.col_anchor_divisors) {
      const long shift = (div == 0) ? 0 : -(size / div);
      std::vector<long> rows(size), cols(size);
      for (int i = 0; i < size; ++i) {
        rows[i] = i + 1;
        cols[i] = i + 1 + shift;
      }
      MatrixSection sec = hurwitz_section(p, q, rows, cols, /*lenient=*/true);
      TnnReport rep = check_tnn(sec, std::min(budget.max_order, size));
      if (minors_tried) *minors_tried += rep.minors_evaluated;
      if (rep.status == TnnStatus::negative_found) return rep.witness;
    }
  }
  return std::nullopt;
}

}  // namespace tnn
