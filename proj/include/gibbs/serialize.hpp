#pragma once

// JSON and CSV encodings of results. Every top-level document carries
// "schema": "gibbs-series/1". Infinite extended reals are the strings
// "+inf" / "-inf"; non-finite plain doubles likewise.

#include <string>
#include <vector>

#include "json.hpp"

#include "gibbs/conjugate.hpp"
#include "gibbs/entropy.hpp"
#include "gibbs/oracle.hpp"
#include "gibbs/scenarios.hpp"
#include "gibbs/series.hpp"

namespace gibbs {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "gibbs-series/1";

Json number(double v);
Json to_json(const ExtReal& v);
Json to_json(const DomainInfo& d);
Json to_json(const SeriesEval& e);
Json to_json(const ConjugateValue& c);
Json to_json(const Weight& w);
Json to_json(const GibbsFit& f);
Json to_json(const PlateauWindow& w);
Json to_json(const PlateauWitness& w);
Json to_json(const AlternatingAttainment& a);
Json to_json(const AlternatingWitness& w);
Json to_json(const VerificationReport& r);
Json to_json(const Certificate& c);
Json to_json(const Example1Row& r);
Json to_json(const Example2Row& r);
Json to_json(const BoxReport& r);

/// {"schema": ..., "command": command} followed by the members of body.
Json document(const std::string& command, const Json& body);

/// Single-line dump, shortest round-trip doubles.
std::string dump(const Json& j);

/// Number formatting shared by CSV and pretty output (%.17g, "+inf"/"-inf").
std::string format_number(double v);

/// Header line plus one row per entry; fields with commas are quoted.
std::string to_csv(const std::vector<Example1Row>& rows);
std::string to_csv(const std::vector<Example2Row>& rows);
std::string to_csv(const std::vector<BoxReport>& rows);

}  // namespace gibbs
