#include "tnnkit/transforms.hpp"

#include <algorithm>
#include <vector>

namespace tnn {

LaurentWindow remove_pole_right(const LaurentWindow& w, const Rational& delta,
                                TransformTrace* trace) {
  if (!(delta > Rational(0)))
    throw InvalidSpec("remove_pole_right: pole location must be positive");
  auto factor = LaurentWindow::polynomial(0, {Rational(1), -delta.inverse()});
  if (trace) {
    trace->op = "remove_pole_right";
    trace->notes = "multiplied by (1 - z/" + delta.str() + ")";
  }
  return window_mul(w, factor);
}

LaurentWindow remove_pole_left(const LaurentWindow& w, const Rational& delta_prime,
                               TransformTrace* trace) {
  if (!(delta_prime > Rational(0)))
    throw InvalidSpec("remove_pole_left: pole location must be positive");
  auto factor = LaurentWindow::polynomial(-1, {-delta_prime.inverse(), Rational(1)});
  if (trace) {
    trace->op = "remove_pole_left";
    trace->notes = "multiplied by (1 - 1/(" + delta_prime.str() + " z))";
  }
  return window_mul(w, factor);
}

namespace {

EdreiSpec erase_one(const EdreiSpec& s, std::vector<Rational> EdreiSpec::* list,
                    const Rational& where, const char* what) {
  EdreiSpec out = s;
  auto& v = out.*list;
  auto it = std::find(v.begin(), v.end(), where);
  if (it == v.end())
    throw InvalidSpec(std::string("no ") + what + " at " + where.str());
  v.erase(it);
  return out;
}

}  // namespace

EdreiSpec remove_pole_right(const EdreiSpec& s, const Rational& delta) {
  return erase_one(s, &EdreiSpec::poles_pos, delta, "right-plane pole");
}

EdreiSpec remove_pole_left(const EdreiSpec& s, const Rational& delta_prime) {
  return erase_one(s, &EdreiSpec::poles_neg, delta_prime, "left-plane pole");
}

DenseMatrix whitney_reduce(const DenseMatrix& m, long j) {
  const long rows = m.rows(), cols = m.cols();
  if (rows < 1 || cols < 2)
    throw ShapeMismatch("whitney_reduce: need at least one row and two columns");
  if (j < 1 || j > rows)
    throw ShapeMismatch("whitney_reduce: ones count out of range");
  for (long i = 0; i < rows; ++i) {
    const Rational expect = i < j ? Rational(1) : Rational(0);
    if (m(i, 0) != expect)
      throw ShapeMismatch("whitney_reduce: column 1 must be " + std::to_string(j) +
                          " ones followed by zeros");
  }
  DenseMatrix work = m;
  // Bottom of the ones block first, so each step sees the original row above.
  for (long i = j - 1; i >= 1; --i) work.row(i) -= work.row(i - 1);
  return work.block(0, 1, rows, cols - 1);
}

CombinedPair combine(const Rational& A, const Rational& B, const LaurentWindow& p,
                     const LaurentWindow& q) {
  return CombinedPair{
      window_add(shift_mul_z(p, 0, A), shift_mul_z(q, 0, B)),
      window_add(shift_mul_z(q, 0, A), shift_mul_z(p, 1, B)),
  };
}

CauchyBinetReport cauchy_binet_check(const Rational& A, const Rational& B,
                                     const LaurentWindow& p, const LaurentWindow& q,
                                     long size, TransformTrace* trace) {
  if (size < 1) throw ShapeMismatch("cauchy_binet_check: size must be >= 1");
  CauchyBinetReport rep;
  rep.size = size;

  std::vector<long> rows(size), cols(size), tall(2 * size);
  for (long i = 0; i < size; ++i) rows[i] = cols[i] = i + 1;
  for (long i = 0; i < 2 * size; ++i) tall[i] = i + 1;

  MatrixSection sel = selector_section(A, B, size, 2 * size);
  CombinedPair c = combine(A, B, p, q);

  MatrixSection h_pq = hurwitz_section(p, q, tall, cols);
  MatrixSection t_f = toeplitz_section(c.f, rows, cols);
  rep.forward_ok = (sel.entries * h_pq.entries) == t_f.entries;

  MatrixSection h_qzp = hurwitz_section(q, shift_mul_z(p, 1, Rational(1)), tall, cols);
  MatrixSection t_g = toeplitz_section(c.g, rows, cols);
  rep.companion_ok = (sel.entries * h_qzp.entries) == t_g.entries;

  if (trace) {
    trace->op = "cauchy_binet_check";
    trace->notes = "A=" + A.str() + " B=" + B.str() + " size=" + std::to_string(size);
    trace->identity_checked = true;
  }
  return rep;
}

}  // namespace tnn
