#pragma once

#include <json.hpp>

#include "qlab/ensemble.hpp"
#include "qlab/optimizer.hpp"
#include "qlab/povm.hpp"

namespace qlab {

// Ensemble document: {"dim": d, "items": [{"prior": p, "state_re": [...],
// "state_im": [...]}]}.
nlohmann::json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

// Povm document: {"dim": d, "elements": [{"re": [[...]], "im": [[...]]}]}.
nlohmann::json povm_to_json(const Povm& p);
Povm povm_from_json(const nlohmann::json& j);

// Full optimizer report, including the winning POVM for replay.
nlohmann::json report_to_json(const OptimizationReport& r);

}  // namespace qlab
