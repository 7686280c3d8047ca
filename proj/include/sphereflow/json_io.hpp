#pragma once

#include "sphereflow/nondeg.hpp"
#include "sphereflow/portrait.hpp"
#include "sphereflow/realize.hpp"

#include "json.hpp"

namespace sphereflow {

// all emitters round floats to 12 significant digits so a rerun of the same
// command writes the same bytes

nlohmann::json field_to_json(const RationalField& f);
RationalField field_from_json(const nlohmann::json& j);

nlohmann::json classification_to_json(const Classification& c);
nlohmann::json separatrices_to_json(const SeparatrixSet& s, int sample_stride = 8);
nlohmann::json portrait_to_json(const Portrait& p);
nlohmann::json nondeg_to_json(const NondegReport& rep);
nlohmann::json realization_to_json(const RealizationResult& r);

// the full document written by the analyze command
nlohmann::json analysis_to_json(const RationalField& f, const Analysis& an,
                                int sample_stride = 8);

std::string dump_stable(const nlohmann::json& j);

}  // namespace sphereflow
