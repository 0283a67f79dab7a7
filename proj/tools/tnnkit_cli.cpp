#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tnnkit/json_io.hpp"

// Exit codes: 0 = positive verdict, 1 = negative verdict, 2 = inconclusive,
// bad input, or any error.

namespace {

using nlohmann::json;
using tnn::Rational;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

Rational rational_arg(const std::string& text) {
  return Rational::from_string(text);
}

int effective_max_order(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("TNN_MAX_ORDER"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1 && v <= 32)
      return static_cast<int>(v);
    throw std::runtime_error("TNN_MAX_ORDER must be an integer in [1, 32]");
  }
  return 5;
}

std::vector<long> label_range(long start, long count) {
  std::vector<long> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = start + i;
  return v;
}

// Exponents a Hurwitz-type section will read, with a little margin.
std::pair<long, long> hurwitz_span(const std::vector<long>& rows,
                                   const std::vector<long>& cols) {
  long imin = 0, imax = 0;
  bool first = true;
  for (long r : rows) {
    const long i = (r % 2 != 0) ? (r + 1) / 2 : r / 2;
    if (first || i < imin) imin = i;
    if (first || i > imax) imax = i;
    first = false;
  }
  const long cmin = *std::min_element(cols.begin(), cols.end());
  const long cmax = *std::max_element(cols.begin(), cols.end());
  return {cmin - imax - 1, cmax - imin + 1};
}

std::pair<long, long> toeplitz_span(const std::vector<long>& rows,
                                    const std::vector<long>& cols) {
  const long rmin = *std::min_element(rows.begin(), rows.end());
  const long rmax = *std::max_element(rows.begin(), rows.end());
  const long cmin = *std::min_element(cols.begin(), cols.end());
  const long cmax = *std::max_element(cols.begin(), cols.end());
  return {cmin - rmax - 1, cmax - rmin + 1};
}

tnn::DenseMatrix matrix_from_json(const json& j) {
  const auto rows = j.get<std::vector<std::vector<Rational>>>();
  if (rows.empty() || rows[0].empty())
    throw std::runtime_error("matrix must be a nonempty 2d array");
  tnn::DenseMatrix m(static_cast<long>(rows.size()),
                     static_cast<long>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::runtime_error("matrix rows have uneven lengths");
    for (std::size_t c = 0; c < rows[i].size(); ++c)
      m(static_cast<long>(i), static_cast<long>(c)) = rows[i][c];
  }
  return m;
}

json matrix_to_json(const tnn::DenseMatrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact windows, sections, and minor checks for structured matrices"};
  app.require_subcommand(1);
  int exit_code = 0;

  // coeffs ------------------------------------------------------------
  auto* coeffs = app.add_subcommand(
      "coeffs", "Laurent coefficient window of a factored series");
  std::string co_spec;
  long co_lo = 0, co_hi = 8;
  int co_trunc = 24;
  coeffs->add_option("--spec", co_spec, "series factor data (json file)")->required();
  coeffs->add_option("--lo", co_lo, "lowest exponent");
  coeffs->add_option("--hi", co_hi, "highest exponent");
  coeffs->add_option("--trunc", co_trunc, "double-sided exponential truncation depth");
  coeffs->callback([&] {
    const auto spec = load_json(co_spec).get<tnn::EdreiSpec>();
    std::cout << json(tnn::edrei_coeffs(spec, co_lo, co_hi, co_trunc)).dump(2)
              << "\n";
  });

  // section -----------------------------------------------------------
  auto* section = app.add_subcommand("section", "finite section of a structured matrix");
  std::string se_kind, se_f, se_p, se_q, se_A = "1", se_B = "1";
  long se_rows = 6, se_cols = 0, se_row_start = 1, se_col_start = 1;
  bool se_lenient = false;
  int se_trunc = 24;
  section->add_option("--kind", se_kind, "toeplitz, hurwitz, or selector")
      ->required()
      ->check(CLI::IsMember({"toeplitz", "hurwitz", "selector"}));
  section->add_option("--f", se_f, "series file for a toeplitz section");
  section->add_option("--p", se_p, "first series file for a hurwitz section");
  section->add_option("--q", se_q, "second series file for a hurwitz section");
  section->add_option("--A", se_A, "selector weight at odd columns");
  section->add_option("--B", se_B, "selector weight at even columns");
  section->add_option("--rows", se_rows, "row count");
  section->add_option("--cols", se_cols, "column count (default: rows)");
  section->add_option("--row-start", se_row_start, "first row label");
  section->add_option("--col-start", se_col_start, "first column label");
  section->add_option("--trunc", se_trunc, "truncation depth for coefficient windows");
  section->add_flag("--lenient", se_lenient,
                    "store untrusted zeros for unknown entries instead of failing");
  section->callback([&] {
    const long ncols = se_cols > 0 ? se_cols : se_rows;
    const auto rows = label_range(se_row_start, se_rows);
    const auto cols = label_range(se_col_start, ncols);
    tnn::MatrixSection sect;
    if (se_kind == "toeplitz") {
      if (se_f.empty()) throw std::runtime_error("--kind toeplitz needs --f");
      const auto spec = load_json(se_f).get<tnn::EdreiSpec>();
      const auto [lo, hi] = toeplitz_span(rows, cols);
      sect = tnn::toeplitz_section(tnn::edrei_coeffs(spec, lo, hi, se_trunc), rows,
                                   cols, se_lenient);
    } else if (se_kind == "hurwitz") {
      if (se_p.empty() || se_q.empty())
        throw std::runtime_error("--kind hurwitz needs --p and --q");
      const auto sp = load_json(se_p).get<tnn::EdreiSpec>();
      const auto sq = load_json(se_q).get<tnn::EdreiSpec>();
      const auto [lo, hi] = hurwitz_span(rows, cols);
      sect = tnn::hurwitz_section(tnn::edrei_coeffs(sp, lo, hi, se_trunc),
                                  tnn::edrei_coeffs(sq, lo, hi, se_trunc), rows,
                                  cols, se_lenient);
    } else {
      sect = tnn::selector_section(rational_arg(se_A), rational_arg(se_B), se_rows,
                                   ncols);
    }
    std::cout << json(sect).dump(2) << "\n";
  });

  // check-tnn ----------------------------------------------------------
  auto* check = app.add_subcommand(
      "check-tnn", "enumerate minors of a section and report the verdict");
  std::string ck_p, ck_q, ck_f;
  long ck_size = 6, ck_row_start = 1, ck_col_start = 1;
  int ck_order = 0, ck_trunc = 24;
  check->add_option("--p", ck_p, "first series file (two-series matrix)");
  check->add_option("--q", ck_q, "second series file (two-series matrix)");
  check->add_option("--f", ck_f, "series file (single-series matrix)");
  check->add_option("--size", ck_size, "square section edge");
  check->add_option("--row-start", ck_row_start, "first row label");
  check->add_option("--col-start", ck_col_start, "first column label");
  check->add_option("--max-order", ck_order,
                    "largest minor order (default: TNN_MAX_ORDER env, else 5)");
  check->add_option("--trunc", ck_trunc, "truncation depth for coefficient windows");
  check->callback([&] {
    const auto rows = label_range(ck_row_start, ck_size);
    const auto cols = label_range(ck_col_start, ck_size);
    tnn::MatrixSection sect;
    if (!ck_f.empty()) {
      const auto spec = load_json(ck_f).get<tnn::EdreiSpec>();
      const auto [lo, hi] = toeplitz_span(rows, cols);
      sect = tnn::toeplitz_section(tnn::edrei_coeffs(spec, lo, hi, ck_trunc), rows,
                                   cols, true);
    } else {
      if (ck_p.empty() || ck_q.empty())
        throw std::runtime_error("check-tnn needs --p and --q (or --f)");
      const auto sp = load_json(ck_p).get<tnn::EdreiSpec>();
      const auto sq = load_json(ck_q).get<tnn::EdreiSpec>();
      const auto [lo, hi] = hurwitz_span(rows, cols);
      sect = tnn::hurwitz_section(tnn::edrei_coeffs(sp, lo, hi, ck_trunc),
                                  tnn::edrei_coeffs(sq, lo, hi, ck_trunc), rows,
                                  cols, true);
    }
    const tnn::TnnReport rep = tnn::check_tnn(sect, effective_max_order(ck_order));
    std::cout << json(rep).dump(2) << "\n";
    if (rep.status == tnn::TnnStatus::negative_found)
      exit_code = 1;
    else if (rep.status == tnn::TnnStatus::inconclusive_untrusted)
      exit_code = 2;
  });

  // check-interlace -----------------------------------------------------
  auto* inter = app.add_subcommand(
      "check-interlace", "validate an interlacing chain, or classify a ratio q/p");
  std::string in_spec, in_p, in_q;
  inter->add_option("--spec", in_spec, "interlacing function data (json file)");
  inter->add_option("--p", in_p, "denominator series file");
  inter->add_option("--q", in_q, "numerator series file");
  inter->callback([&] {
    json out;
    if (!in_spec.empty()) {
      const auto spec = load_json(in_spec).get<tnn::SFunctionSpec>();
      if (const auto v = tnn::validate_interlacing(spec)) {
        out = json{{"ok", false}, {"violation", *v}};
        exit_code = 1;
      } else {
        out = json{{"ok", true}, {"spec", tnn::normalize_spec(spec)}};
      }
    } else if (!in_p.empty() && !in_q.empty()) {
      const auto sp = load_json(in_p).get<tnn::EdreiSpec>();
      const auto sq = load_json(in_q).get<tnn::EdreiSpec>();
      const auto result = tnn::ratio_classify(sp, sq);
      if (const auto* spec = std::get_if<tnn::SFunctionSpec>(&result)) {
        out = json{{"ok", true}, {"spec", *spec}};
      } else {
        out = json{{"ok", false},
                   {"obstruction", std::get<tnn::NotSForm>(result).obstruction}};
        exit_code = 1;
      }
    } else {
      throw std::runtime_error("check-interlace needs --spec, or --p and --q");
    }
    std::cout << out.dump(2) << "\n";
  });

  // pf -------------------------------------------------------------------
  auto* pf = app.add_subcommand(
      "pf", "partial-fraction representation of an interlacing function");
  std::string pf_spec;
  std::vector<std::string> pf_eval;
  pf->add_option("--spec", pf_spec, "interlacing function data (json file)")->required();
  pf->add_option("--eval", pf_eval, "also evaluate both forms at these rationals");
  pf->callback([&] {
    const auto spec = load_json(pf_spec).get<tnn::SFunctionSpec>();
    const auto parts = tnn::partial_fractions(spec);
    json out = json{{"pf", parts}};
    if (!pf_eval.empty()) {
      json checks = json::array();
      for (const auto& text : pf_eval) {
        const Rational x = rational_arg(text);
        checks.push_back(json{{"x", x},
                              {"product", tnn::evaluate_real(spec, x)},
                              {"pf", tnn::evaluate_pf(parts, x)}});
      }
      out["checks"] = checks;
    }
    std::cout << out.dump(2) << "\n";
  });

  // transform --------------------------------------------------------------
  auto* tr = app.add_subcommand("transform", "constructive operations on the data");
  std::string tr_op, tr_spec, tr_p, tr_q, tr_at, tr_matrix, tr_A = "1", tr_B = "1";
  long tr_size = 4, tr_ones = 1;
  int tr_trunc = 24;
  tr->add_option("--op", tr_op, "reciprocal, remove-pole-right, remove-pole-left, "
                                "whitney, or cauchy-binet")
      ->required()
      ->check(CLI::IsMember({"reciprocal", "remove-pole-right", "remove-pole-left",
                             "whitney", "cauchy-binet"}));
  tr->add_option("--spec", tr_spec, "input data file (json)");
  tr->add_option("--at", tr_at, "pole location to remove");
  tr->add_option("--matrix", tr_matrix, "matrix file (2d json array) for whitney");
  tr->add_option("--ones", tr_ones, "length of the leading-ones block for whitney");
  tr->add_option("--p", tr_p, "first series file for cauchy-binet");
  tr->add_option("--q", tr_q, "second series file for cauchy-binet");
  tr->add_option("--A", tr_A, "first combination weight");
  tr->add_option("--B", tr_B, "second combination weight");
  tr->add_option("--size", tr_size, "section edge for cauchy-binet");
  tr->add_option("--trunc", tr_trunc, "truncation depth for coefficient windows");
  tr->callback([&] {
    if (tr_op == "reciprocal") {
      if (tr_spec.empty()) throw std::runtime_error("reciprocal needs --spec");
      const auto spec = load_json(tr_spec).get<tnn::SFunctionSpec>();
      std::cout << json(tnn::reciprocal_transform(spec)).dump(2) << "\n";
    } else if (tr_op == "remove-pole-right" || tr_op == "remove-pole-left") {
      if (tr_spec.empty() || tr_at.empty())
        throw std::runtime_error(tr_op + " needs --spec and --at");
      const auto spec = load_json(tr_spec).get<tnn::EdreiSpec>();
      const Rational at = rational_arg(tr_at);
      const auto out = tr_op == "remove-pole-right"
                           ? tnn::remove_pole_right(spec, at)
                           : tnn::remove_pole_left(spec, at);
      std::cout << json(out).dump(2) << "\n";
    } else if (tr_op == "whitney") {
      if (tr_matrix.empty()) throw std::runtime_error("whitney needs --matrix");
      const auto m = matrix_from_json(load_json(tr_matrix));
      std::cout << matrix_to_json(tnn::whitney_reduce(m, tr_ones)).dump(2) << "\n";
    } else {
      if (tr_p.empty() || tr_q.empty())
        throw std::runtime_error("cauchy-binet needs --p and --q");
      const auto sp = load_json(tr_p).get<tnn::EdreiSpec>();
      const auto sq = load_json(tr_q).get<tnn::EdreiSpec>();
      const long span = 3 * tr_size + 4;
      const auto wp = tnn::edrei_coeffs(sp, -span, span, tr_trunc);
      const auto wq = tnn::edrei_coeffs(sq, -span, span, tr_trunc);
      const auto rep = tnn::cauchy_binet_check(rational_arg(tr_A), rational_arg(tr_B),
                                               wp, wq, tr_size);
      std::cout << json(rep).dump(2) << "\n";
      if (!rep.forward_ok || !rep.companion_ok) exit_code = 1;
    }
  });

  // verify -------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "seeded randomized verification runs");
  std::string vf_direction = "forward", vf_suite = "gap";
  tnn::ScenarioConfig vf_cfg;
  std::uint64_t vf_seed = 1;
  verify->add_option("--direction", vf_direction, "forward, reverse, or structural")
      ->check(CLI::IsMember({"forward", "reverse", "structural"}));
  verify->add_option("--suite", vf_suite,
                     "structural suite: gap, degenerate, ratio, symmetry, pole");
  verify->add_option("--seed", vf_seed, "master seed");
  verify->add_option("--trials", vf_cfg.trials, "trial count");
  verify->add_option("--size", vf_cfg.section_size, "section edge");
  verify->add_option("--max-order", vf_cfg.max_minor_order, "largest minor order");
  verify->add_option("--n-zeros", vf_cfg.n_zeros, "zero/pole pairs per side, at most");
  verify->add_option("--max-den", vf_cfg.max_den, "largest parameter denominator");
  verify->add_option("--trunc", vf_cfg.trunc, "truncation depth");
  verify->add_flag("--allow-shared-factor", vf_cfg.allow_shared_factor,
                   "let both series pick up a common factor");
  verify->callback([&] {
    vf_cfg.master_seed = vf_seed;
    tnn::VerificationReport rep;
    if (vf_direction == "forward")
      rep = tnn::verify_forward(vf_cfg);
    else if (vf_direction == "reverse")
      rep = tnn::verify_reverse(vf_cfg);
    else
      rep = tnn::verify_structural(vf_suite, vf_cfg);
    std::cout << json(rep).dump(2) << "\n";
    // The reverse run hunts witnesses inside a finite budget; allow one
    // straggler per 25 trials before calling the run a failure.
    const std::size_t allowed =
        vf_direction == "reverse" ? static_cast<std::size_t>(vf_cfg.trials / 25) : 0;
    if (rep.failures.size() > allowed) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
