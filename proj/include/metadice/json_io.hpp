#pragma once

/**
 * @file json_io.hpp
 * @brief JSON serialization of the library's value types. Rationals travel
 *        as "num/den" (or plain integer) strings, so round trips are
 *        bit-exact.
 */

#include "metadice/fractal.hpp"
#include "metadice/generation.hpp"
#include "metadice/preference.hpp"
#include "metadice/quantile.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace metadice {

using Json = nlohmann::ordered_json;

Json to_json(const StepQuantile& q);
StepQuantile step_quantile_from_json(const Json& j);

Json to_json(const FloatQuantile& q);

/// Tuple file: {"name": ..., "labels": [...], "members": [...]}; name and
/// labels are optional on input.
Json tuple_to_json(const std::string& name, const std::vector<StepQuantile>& members,
                   const std::vector<std::string>& labels);
std::vector<StepQuantile> tuple_from_json(const Json& j);

Json to_json(const CycleReport& report);

/// Generation file: basic tuple (inline), lambda, k, and members sorted
/// lexicographically by index.
Json generation_to_json(const Generation& gen);
Generation generation_from_json(const Json& j, std::uint64_t member_cap = kDefaultMemberCap);

Json to_json(const DimensionReport& report);

Json to_json(const PairwiseRelationReport& report);
Json to_json(const BijectionReport& report);
Json to_json(const MetaIntransitivityReport& report);
Json to_json(const InfinitePairwiseReport& report);
Json to_json(const FunctionalConstancyReport& report);

}  // namespace metadice
