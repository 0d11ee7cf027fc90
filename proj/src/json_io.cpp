#include "metadice/json_io.hpp"

#include "metadice/presets.hpp"

#include <stdexcept>

namespace metadice {

namespace {

Json rationals_to_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const Rational& v : values) {
        out.push_back(to_string(v));
    }
    return out;
}

std::vector<Rational> rationals_from_json(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw std::invalid_argument(std::string("json: ") + what + " must be an array of strings");
    }
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw std::invalid_argument(std::string("json: ") + what + " entries must be strings");
        }
        out.push_back(parse_rational(item.get<std::string>()));
    }
    return out;
}

Json doubles_to_json(const std::vector<double>& values) {
    Json out = Json::array();
    for (double v : values) {
        out.push_back(decimal_string(v, 17));
    }
    return out;
}

}  // namespace

Json to_json(const StepQuantile& q) {
    Json out;
    out["breakpoints"] = rationals_to_json(q.breakpoints());
    out["values"] = rationals_to_json(q.values());
    return out;
}

StepQuantile step_quantile_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values")) {
        throw std::invalid_argument("json: step quantile needs 'breakpoints' and 'values'");
    }
    return StepQuantile(rationals_from_json(j["breakpoints"], "breakpoints"),
                        rationals_from_json(j["values"], "values"));
}

Json to_json(const FloatQuantile& q) {
    Json out;
    out["breakpoints"] = doubles_to_json(q.breakpoints());
    out["values"] = doubles_to_json(q.values());
    out["float"] = true;
    return out;
}

Json tuple_to_json(const std::string& name, const std::vector<StepQuantile>& members,
                   const std::vector<std::string>& labels) {
    Json out;
    if (!name.empty()) {
        out["name"] = name;
    }
    if (!labels.empty()) {
        out["labels"] = labels;
    }
    Json array = Json::array();
    for (const StepQuantile& member : members) {
        array.push_back(to_json(member));
    }
    out["members"] = std::move(array);
    return out;
}

std::vector<StepQuantile> tuple_from_json(const Json& j) {
    const Json* members = nullptr;
    if (j.is_array()) {
        members = &j;
    } else if (j.is_object() && j.contains("members")) {
        members = &j["members"];
    } else {
        throw std::invalid_argument("json: tuple needs a 'members' array");
    }
    std::vector<StepQuantile> out;
    out.reserve(members->size());
    for (const auto& item : *members) {
        out.push_back(step_quantile_from_json(item));
    }
    return out;
}

Json to_json(const CycleReport& report) {
    Json out;
    out["pairwise_probabilities"] = rationals_to_json(report.pairwise_probabilities);
    out["tie_probabilities"] = rationals_to_json(report.tie_probabilities);
    out["min_probability"] = to_string(report.min_probability);
    out["is_intransitive"] = report.is_intransitive;
    return out;
}

Json generation_to_json(const Generation& gen) {
    Json out;
    out["basic"] = tuple_to_json("", gen.basic().members(), {});
    out["lambda"] = to_string(gen.config().lambda);
    out["k"] = gen.k();
    Json members = Json::array();
    for (const auto& [index, fn] : gen.members()) {
        Json member;
        member["index"] = index;
        member["values"] = rationals_to_json(fn.values());
        member["breakpoints"] = rationals_to_json(fn.breakpoints());
        members.push_back(std::move(member));
    }
    out["members"] = std::move(members);
    return out;
}

Generation generation_from_json(const Json& j, std::uint64_t member_cap) {
    if (!j.is_object() || !j.contains("basic") || !j.contains("lambda") || !j.contains("k") ||
        !j.contains("members")) {
        throw std::invalid_argument("json: generation needs 'basic', 'lambda', 'k' and 'members'");
    }
    BasicTuple basic = j["basic"].is_string() ? preset_tuple(j["basic"].get<std::string>())
                                              : validate_basic(tuple_from_json(j["basic"]));
    const Rational lambda = parse_rational(j["lambda"].get<std::string>());
    const int k = j["k"].get<int>();
    const LambdaConfig config = make_lambda_config(basic, lambda, false);

    Generation rebuilt = build_generation(basic, config, k, member_cap);
    if (j["members"].size() != rebuilt.members().size()) {
        throw std::invalid_argument("json: generation member count mismatch");
    }
    for (const auto& item : j["members"]) {
        Index index = item["index"].get<Index>();
        auto it = rebuilt.members().find(index);
        if (it == rebuilt.members().end()) {
            throw std::invalid_argument("json: unexpected generation index " + index_to_string(index));
        }
        const StepQuantile parsed(rationals_from_json(item["breakpoints"], "breakpoints"),
                                  rationals_from_json(item["values"], "values"));
        if (!(parsed == it->second)) {
            throw std::invalid_argument("json: member " + index_to_string(index) +
                                        " does not match its index");
        }
    }
    return rebuilt;
}

Json to_json(const DimensionReport& report) {
    Json out;
    out["m"] = report.m;
    out["lambda"] = to_string(report.lambda);
    out["d"] = decimal_string(report.d, 12);
    out["d_sup"] = decimal_string(report.d_sup, 12);
    out["r"] = to_string(report.r);
    out["R"] = to_string(report.R);
    out["fractal_dust"] = report.fractal_dust;
    return out;
}

Json to_json(const PairwiseRelationReport& report) {
    Json out;
    out["pairs_checked"] = report.pairs_checked;
    out["sampled"] = report.sampled;
    out["sign_violations"] = report.sign_violations;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"first", v.first},
                              {"second", v.second},
                              {"expected", to_string(v.expected)},
                              {"actual", to_string(v.actual)}});
    }
    out["violations"] = std::move(violations);
    return out;
}

Json to_json(const BijectionReport& report) {
    Json out;
    out["member_count"] = report.member_count;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"first", v.first}, {"second", v.second}});
    }
    out["violations"] = std::move(violations);
    return out;
}

Json to_json(const MetaIntransitivityReport& report) {
    Json out;
    out["order"] = report.order;
    out["group_levels_checked"] = report.group_levels_checked;
    out["tuples_checked"] = report.tuples_checked;
    out["comparisons"] = report.comparisons;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back(
            {{"prefix", v.prefix}, {"from_digit", v.from_digit}, {"to_digit", v.to_digit}});
    }
    out["violations"] = std::move(violations);
    return out;
}

Json to_json(const InfinitePairwiseReport& report) {
    Json out;
    out["pairs_checked"] = report.pairs_checked;
    out["note"] = report.note;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"first", v.first},
                              {"second", v.second},
                              {"expected", to_string(v.expected)},
                              {"actual", to_string(v.actual)}});
    }
    out["violations"] = std::move(violations);
    return out;
}

Json to_json(const FunctionalConstancyReport& report) {
    Json out;
    out["applicable"] = report.applicable;
    if (report.basic_value) {
        out["basic_value"] = to_string(*report.basic_value);
    }
    if (report.expected) {
        out["expected"] = to_string(*report.expected);
    }
    out["checked"] = report.checked;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"member", v.member}, {"actual", to_string(v.actual)}});
    }
    out["violations"] = std::move(violations);
    return out;
}

}  // namespace metadice
