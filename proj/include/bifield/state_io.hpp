#pragma once

#include <json.hpp>

#include "bifield/fock.hpp"

namespace bifield {

/// One document per non-zero (component, branch):
///   {"tag": "photon"|"local"|"bio_local"|"blip", "s": +-1, "lambda": 1|2,
///    "basis": "k"|"x", "re": [...], "im": [...]}
/// Multiple documents are emitted as a JSON array. Custom weights and a
/// non-zero vacuum amplitude have no representation and throw.
nlohmann::json state_to_json(const SingleExcitationState& state);

/// Accepts a single document or an array of them. Throws
/// std::invalid_argument on schema violations.
SingleExcitationState state_from_json(const nlohmann::json& doc, GridPtr grid);

}  // namespace bifield
