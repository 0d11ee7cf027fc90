#include "metadice/presets.hpp"

#include <stdexcept>

namespace metadice {

namespace {

std::vector<Rational> faces(std::initializer_list<int> values) {
    std::vector<Rational> out;
    out.reserve(values.size());
    for (int v : values) {
        out.emplace_back(v);
    }
    return out;
}

}  // namespace

PresetFaces preset_faces(std::string_view name) {
    if (name == "ed") {
        // Efron dice, in traversal order: each die loses to the next.
        return {{"A", "D", "C", "B"},
                {faces({0, 0, 4, 4, 4, 4}), faces({1, 1, 1, 5, 5, 5}), faces({2, 2, 2, 2, 6, 6}),
                 faces({3, 3, 3, 3, 3, 3})}};
    }
    if (name == "cid") {
        // Rows of the Lo Shu magic square, sorted.
        return {{"A", "B", "C"}, {faces({2, 4, 9}), faces({3, 5, 7}), faces({1, 6, 8})}};
    }
    if (name == "sid") {
        return {{"A", "B", "C"}, {faces({1, 1, 4}), faces({2, 2, 2}), faces({0, 3, 3})}};
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected ed, cid, sid or trybula)");
}

BasicTuple preset_tuple(std::string_view name) {
    PresetFaces preset = preset_faces(name);
    std::vector<StepQuantile> members;
    members.reserve(preset.faces.size());
    for (auto& f : preset.faces) {
        members.push_back(make_dice(std::move(f)));
    }
    return validate_basic(std::move(members));
}

bool is_preset_name(std::string_view name) {
    return name == "ed" || name == "cid" || name == "sid" || name == "trybula";
}

}  // namespace metadice
