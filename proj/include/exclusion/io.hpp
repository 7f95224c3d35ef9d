#pragma once

#include "exclusion/beta.hpp"
#include "exclusion/brackets.hpp"
#include "exclusion/components.hpp"
#include "exclusion/even.hpp"
#include "exclusion/genericity.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exclusion {

using Json = nlohmann::ordered_json;

std::string fraction_string(const Rational& q);
/// Accepts "p/q", an integer, or a finite decimal such as "0.49".
/// Throws SchemaError at `pointer` otherwise.
Rational parse_fraction(const Json& j, const std::string& pointer);
/// Fixed 10-digit decimal, or null for an empty shift.
Json entropy_json(const std::optional<double>& h);

SystemSpec parse_system(const Json& j, const std::string& pointer = "");
Hole parse_hole(const Json& j, const std::string& pointer = "", std::vector<std::string>* warnings = nullptr);
Sft parse_sft(const Json& j, const std::string& pointer = "", const Limits& limits = {});

Json to_json(const SystemSpec& sys);
Json to_json(const Point& p);
Json to_json(const Hole& hole);
/// {alphabet_size, window, sided, forbidden}; a masked Sft is written at
/// window + 1 so the forbidden list alone presents it.
Json to_json(const Sft& s);
Json to_json(const Certificate& c);
Json to_json(const EscapeOutcome& e);
Json to_json(const BracketPair& b);
Json to_json(const ComponentForest& f);
Json to_json(const BoundReport& b);
Json to_json(const AmalgamationReport& a);
Json to_json(const BetaClass& c);
Json to_json(const BetaVerification& v);
Json to_json(const Witness& w);
/// No timings, so equal inputs give byte-identical text.
Json to_json(const GenericityReport& r);

std::string export_dot(const Sft& s);
std::string export_dot(const ComponentForest& f);

/// Config keys: system, hole, depth, pipeline (subset of bracket, certify,
/// components, filtration, beta, witness), beta {t, branches, language_len,
/// verify_res}, timings (default true).
Json run_analysis(const Json& config, const Limits& limits = {});

} // namespace exclusion
