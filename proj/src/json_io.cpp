#include "tnnkit/json_io.hpp"

namespace tnn {

using nlohmann::json;

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long long>());
    return;
  }
  r = Rational::from_string(j.get<std::string>());
}

void to_json(json& j, const EdreiSpec& s) {
  j = json{{"C", s.C},
           {"j", s.j},
           {"A", s.A},
           {"A0", s.A0},
           {"zeros_pos", s.zeros_pos},
           {"zeros_neg", s.zeros_neg},
           {"poles_pos", s.poles_pos},
           {"poles_neg", s.poles_neg}};
}

void from_json(const json& j, EdreiSpec& s) {
  s = EdreiSpec{};
  if (j.contains("C")) s.C = j.at("C").get<Rational>();
  if (j.contains("j")) s.j = j.at("j").get<long>();
  if (j.contains("A")) s.A = j.at("A").get<Rational>();
  if (j.contains("A0")) s.A0 = j.at("A0").get<Rational>();
  if (j.contains("zeros_pos")) s.zeros_pos = j.at("zeros_pos").get<std::vector<Rational>>();
  if (j.contains("zeros_neg")) s.zeros_neg = j.at("zeros_neg").get<std::vector<Rational>>();
  if (j.contains("poles_pos")) s.poles_pos = j.at("poles_pos").get<std::vector<Rational>>();
  if (j.contains("poles_neg")) s.poles_neg = j.at("poles_neg").get<std::vector<Rational>>();
}

void to_json(json& j, const LaurentWindow& w) {
  j = json{{"lo", w.lo()},
           {"hi", w.hi()},
           {"coeffs", w.coeffs()},
           {"exact_left", w.exact_left()},
           {"exact_right", w.exact_right()},
           {"approx", w.approx()}};
}

void from_json(const json& j, LaurentWindow& w) {
  w = LaurentWindow(j.at("lo").get<long>(), j.at("hi").get<long>(),
                    j.at("coeffs").get<std::vector<Rational>>(),
                    j.value("exact_left", false), j.value("exact_right", false),
                    j.value("approx", false));
}

void to_json(json& j, const MatrixSection& m) {
  json entries = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(json(m.entries(i, c)));
    entries.push_back(std::move(row));
  }
  j = json{{"rows", m.row_labels}, {"cols", m.col_labels}, {"entries", entries}};
}

void to_json(json& j, const MinorWitness& w) {
  j = json{{"rows", w.rows}, {"cols", w.cols}, {"value", w.value}};
}

namespace {

const char* status_name(TnnStatus s) {
  switch (s) {
    case TnnStatus::all_nonnegative: return "all_nonnegative";
    case TnnStatus::negative_found: return "negative_found";
    default: return "inconclusive_untrusted";
  }
}

}  // namespace

void to_json(json& j, const TnnReport& r) {
  j = json{{"status", status_name(r.status)},
           {"max_order", r.max_order},
           {"witness", r.witness ? json(*r.witness) : json(nullptr)},
           {"count", r.minors_evaluated}};
}

namespace {

const char* kind_name(SKind k) {
  switch (k) {
    case SKind::doubly_infinite: return "doubly_infinite";
    case SKind::meromorphic: return "meromorphic";
    default: return "affine";
  }
}

SKind kind_of(const std::string& name) {
  if (name == "doubly_infinite") return SKind::doubly_infinite;
  if (name == "meromorphic") return SKind::meromorphic;
  if (name == "affine") return SKind::affine;
  throw InvalidSpec("unknown kind: " + name);
}

}  // namespace

void to_json(json& j, const SFunctionSpec& s) {
  j = json{{"kind", kind_name(s.kind)},
           {"C", s.C},
           {"betas_pos", s.betas_pos},
           {"alphas_pos", s.alphas_pos},
           {"betas_neg", s.betas_neg},
           {"alphas_neg", s.alphas_neg}};
  if (s.beta0) j["beta0"] = *s.beta0;
  if (s.alpha0) j["alpha0"] = *s.alpha0;
}

void from_json(const json& j, SFunctionSpec& s) {
  s = SFunctionSpec{};
  s.kind = kind_of(j.at("kind").get<std::string>());
  if (j.contains("C")) s.C = j.at("C").get<Rational>();
  if (j.contains("betas_pos")) s.betas_pos = j.at("betas_pos").get<std::vector<Rational>>();
  if (j.contains("alphas_pos")) s.alphas_pos = j.at("alphas_pos").get<std::vector<Rational>>();
  if (j.contains("betas_neg")) s.betas_neg = j.at("betas_neg").get<std::vector<Rational>>();
  if (j.contains("alphas_neg")) s.alphas_neg = j.at("alphas_neg").get<std::vector<Rational>>();
  if (j.contains("beta0") && !j.at("beta0").is_null())
    s.beta0 = j.at("beta0").get<Rational>();
  if (j.contains("alpha0") && !j.at("alpha0").is_null())
    s.alpha0 = j.at("alpha0").get<Rational>();
}

void to_json(json& j, const ChainViolation& v) {
  j = json{{"lhs", v.lhs},
           {"rhs", v.rhs},
           {"lhs_value", v.lhs_value},
           {"rhs_value", v.rhs_value}};
}

void to_json(json& j, const PartialFractions& pf) {
  json terms = json::array();
  for (const auto& t : pf.terms)
    terms.push_back(json{{"pole", t.pole}, {"coeff", t.coeff}});
  j = json{{"constant", pf.constant}, {"linear", pf.linear}, {"terms", terms}};
}

void to_json(json& j, const HalfplaneReport& r) {
  j = json{{"samples", r.samples},
           {"min_im", r.min_im},
           {"all_nonnegative", r.all_nonnegative}};
}

void to_json(json& j, const CauchyBinetReport& r) {
  j = json{{"forward_ok", r.forward_ok},
           {"companion_ok", r.companion_ok},
           {"size", r.size}};
}

void to_json(json& j, const TrialFailure& f) {
  j = json{{"trial", f.trial}, {"seed", f.seed}, {"message", f.message}};
}

void to_json(json& j, const VerificationReport& r) {
  j = json{{"scenario", r.scenario},
           {"master_seed", r.master_seed},
           {"trials", r.trials},
           {"section_size", r.section_size},
           {"max_minor_order", r.max_minor_order},
           {"minors_evaluated", r.minors_evaluated},
           {"witnesses_found", r.witnesses_found},
           {"failures", r.failures},
           {"passed", r.passed()}};
}

}  // namespace tnn
