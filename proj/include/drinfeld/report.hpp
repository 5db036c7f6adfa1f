#pragma once

#include "drinfeld/kz.hpp"
#include "drinfeld/relations.hpp"
#include "drinfeld/solver.hpp"

#include <json.hpp>

namespace drinfeld {

/// Report document; `provenance` is copied in verbatim.
nlohmann::json report_to_json(const RelationReport& r, const nlohmann::json& provenance = nlohmann::json::object());

/// Per-degree dimensions and drawn parameters of a solver run.
nlohmann::json solve_sidecar(const SolveResult& s, uint64_t seed, const ConstraintOptions& opt);

nlohmann::json kz_check_json(const KZCheck& c);

}  // namespace drinfeld
