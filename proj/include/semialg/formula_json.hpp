#pragma once

#include "semialg/formula.hpp"

#include <json.hpp>

namespace semialg {

/// {"exp": [...], "num": "...", "den": "..."} per term.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j, std::size_t dimension);

/// Formula nodes are tagged objects: {"op": "atom", "poly": i, "signs": [0, 1]},
/// {"op": "and", "children": [...]}, {"op": "not", "child": ...},
/// {"op": "true"}, {"op": "false"}.
nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j, std::size_t poly_count);

nlohmann::json to_json(const Representation& rep);
/// Throws std::invalid_argument on malformed input or violated invariants.
Representation representation_from_json(const nlohmann::json& j);

}  // namespace semialg
