#pragma once

/**
 * @file presets.hpp
 * @brief Built-in dice tuples, stored in their precedence traversal order.
 */

#include "metadice/generation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace metadice {

/// Face lists for "ed", "cid" or "sid", with their display labels.
/// ED is stored as (A, D, C, B): the order in which each die is beaten by
/// the next. Throws std::invalid_argument on an unknown name.
struct PresetFaces {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> faces;
};
PresetFaces preset_faces(std::string_view name);

/// Validated basic tuple for a named preset.
BasicTuple preset_tuple(std::string_view name);

bool is_preset_name(std::string_view name);

}  // namespace metadice
