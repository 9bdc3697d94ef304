#pragma once

#include "semialg/formula_json.hpp"
#include "semialg/lint.hpp"
#include "semialg/polytope.hpp"

#include <string>

namespace semialg {

inline constexpr int report_schema_version = 1;

/// Rationals are strings ("3/4") so no precision is lost.
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const Ball& b);
nlohmann::json to_json(const GridSpec& g);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const SampleReport& r);
nlohmann::json to_json(const HypothesisCheck& h);
nlohmann::json to_json(const LintVerdict& v);
nlohmann::json to_json(const Requirement& r);
nlohmann::json to_json(const ContradictionResult& r);
nlohmann::json to_json(const PolytopeH& p);
nlohmann::json to_json(const FactorMapReport& r);
nlohmann::json to_json(const PolygonStructure& r);

/// Which findings are exact and which rest on sampling.
nlohmann::json claims();

/// Envelope shared by every command. Keys serialize in sorted order, so
/// identical inputs give identical bytes; "timing" is only added by callers
/// that ask for it.
nlohmann::json make_report(const std::string& command, nlohmann::json input, nlohmann::json result);

}  // namespace semialg
