/*******************************************************************************
 * JSON views of cuts, contraction levels, division trees and engine stats.
 * Field order is fixed so dumps can be compared byte for byte.
 *
 * @file:   serialize.hpp
 ******************************************************************************/
#pragma once

#include <json.hpp>

#include "geosssp/contraction.hpp"
#include "geosssp/division.hpp"
#include "geosssp/separators.hpp"
#include "geosssp/sssp.hpp"

namespace geosssp {

using Json = nlohmann::ordered_json;

Json to_json(const Surface &surface);
Json to_json(const SeparatorCut &cut);
Json to_json(const SeparatorReport &report);
Json to_json(const ContractedCut &cut);
Json to_json(const Schedule &schedule);
Json to_json(const Contraction &contraction);
Json to_json(const DivisionTree &tree);
Json to_json(const DivisionReport &report);
Json to_json(const EngineStats &stats, bool with_time = true);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json &j);

} // namespace geosssp
