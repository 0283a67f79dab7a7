#pragma once

#include <json.hpp>

#include "tnnkit/harness.hpp"
#include "tnnkit/laurent.hpp"
#include "tnnkit/section.hpp"
#include "tnnkit/sfunc.hpp"
#include "tnnkit/tnn.hpp"
#include "tnnkit/transforms.hpp"

// JSON round-trips.  Rationals travel as strings ("3" or "3/4") so nothing
// ever goes through floating point.  nlohmann's object keys are sorted, so
// dump() of any report is canonical byte for byte.

namespace tnn {

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);

void to_json(nlohmann::json& j, const EdreiSpec& s);
void from_json(const nlohmann::json& j, EdreiSpec& s);

void to_json(nlohmann::json& j, const LaurentWindow& w);
void from_json(const nlohmann::json& j, LaurentWindow& w);

void to_json(nlohmann::json& j, const MatrixSection& m);

void to_json(nlohmann::json& j, const MinorWitness& w);
void to_json(nlohmann::json& j, const TnnReport& r);

void to_json(nlohmann::json& j, const SFunctionSpec& s);
void from_json(const nlohmann::json& j, SFunctionSpec& s);
void to_json(nlohmann::json& j, const ChainViolation& v);
void to_json(nlohmann::json& j, const PartialFractions& pf);
void to_json(nlohmann::json& j, const HalfplaneReport& r);

void to_json(nlohmann::json& j, const CauchyBinetReport& r);

void to_json(nlohmann::json& j, const TrialFailure& f);
void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace tnn
