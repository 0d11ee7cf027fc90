#include "doctest.h"

#include "helpers.hpp"
#include "metadice/json_io.hpp"

#include <stdexcept>

using namespace metadice;
using testutil::Q;
using testutil::dice;

TEST_SUITE_BEGIN("json");

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(Q("22/8")) == "11/4");
    CHECK(to_string(Q("-22/8")) == "-11/4");
    CHECK(to_string(Q("5")) == "5");
    CHECK(to_string(Q("0")) == "0");
    CHECK(parse_rational("123456789012345678901234567890/2") ==
          parse_rational("61728394506172839450617283945"));
    CHECK(parse_rational("1/-2") == Q("-1/2"));  // sign normalizes to the numerator
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("3/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(" 1"), std::invalid_argument);
}

TEST_CASE("step quantile serialization shape") {
    const Json j = to_json(dice({2, 4, 9}));
    CHECK(j["breakpoints"] == Json::array({"0", "1/3", "2/3", "1"}));
    CHECK(j["values"] == Json::array({"2", "4", "9"}));
}

TEST_CASE("step quantile round trip is bit exact") {
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 50; ++i) {
        const StepQuantile q = testutil::random_dice(rng);
        const Json j = to_json(q);
        CHECK(step_quantile_from_json(j) == q);
        CHECK(to_json(step_quantile_from_json(j)).dump() == j.dump());
    }
    const StepQuantile negative = make_dice({Q("-7/3"), Q("1000000000000000000001/3")});
    CHECK(step_quantile_from_json(to_json(negative)) == negative);
}

TEST_CASE("malformed step quantiles are rejected") {
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(R"({"values": ["1"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(
                        R"({"breakpoints": ["0", "1"], "values": ["1", "2"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(
                        R"({"breakpoints": ["0", "1/2", "1"], "values": ["2", "1"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(
                        R"({"breakpoints": ["1/2", "1"], "values": ["1"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(
                        R"({"breakpoints": ["0", "x"], "values": ["1"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_quantile_from_json(Json::parse(
                        R"({"breakpoints": ["0", "1"], "values": [1]})")),
                    std::invalid_argument);
}

TEST_CASE("tuple files round trip with labels") {
    const auto members = preset_tuple("sid").members();
    const Json j = tuple_to_json("sid", members, {"A", "B", "C"});
    CHECK(j["name"] == "sid");
    CHECK(j["labels"] == Json::array({"A", "B", "C"}));
    CHECK(tuple_from_json(j) == members);
    CHECK(tuple_from_json(j["members"]) == members);  // bare arrays are accepted
    CHECK_THROWS_AS(tuple_from_json(Json::parse(R"({"no": "members"})")), std::invalid_argument);
}

TEST_CASE("float quantile serialization keeps full precision") {
    const double p = 0.6180339887498949;
    const Json j = to_json(FloatQuantile({0.0, p, 1.0}, {1.0, 4.0}));
    CHECK(j["float"] == true);
    // 17 significant digits round-trip a double exactly
    CHECK(std::stod(j["breakpoints"][1].get<std::string>()) == p);
}

TEST_CASE("cycle report serialization") {
    const Json j = to_json(preset_tuple("sid").cycle());
    CHECK(j["pairwise_probabilities"] == Json::array({"2/3", "2/3", "5/9"}));
    CHECK(j["min_probability"] == "5/9");
    CHECK(j["is_intransitive"] == true);
}

TEST_CASE("dimension report serialization uses 12 significant digits") {
    const Json j = to_json(dimension_report(preset_tuple("sid"), Q("6")));
    CHECK(j["m"] == 3);
    CHECK(j["lambda"] == "6");
    CHECK(j["d"] == "0.613147192765");
    CHECK(j["d_sup"] == "0.682606194486");
    CHECK(j["r"] == "1");
    CHECK(j["R"] == "4");
    CHECK(j["fractal_dust"] == true);
}

TEST_CASE("generation files round trip bit exactly") {
    const BasicTuple basic = preset_tuple("sid");
    const Generation gen =
        build_generation(basic, make_lambda_config(basic, Q("5"), false), 2);
    const Json j = generation_to_json(gen);
    CHECK(j["lambda"] == "5");
    CHECK(j["k"] == 2);
    CHECK(j["members"].size() == 9);

    // members are sorted lexicographically by index
    Index previous;
    bool first = true;
    for (const auto& member : j["members"]) {
        const Index index = member["index"].get<Index>();
        if (!first) {
            CHECK(previous < index);
        }
        previous = index;
        first = false;
    }

    const Generation parsed = generation_from_json(j);
    CHECK(parsed.members() == gen.members());
    CHECK(generation_to_json(parsed).dump() == j.dump());
}

TEST_CASE("generation files may reference a preset by name") {
    const BasicTuple basic = preset_tuple("sid");
    Json j = generation_to_json(build_generation(basic, make_lambda_config(basic, Q("5"), false), 2));
    j["basic"] = "sid";
    const Generation parsed = generation_from_json(j);
    CHECK(parsed.members().size() == 9);
}

TEST_CASE("generation parsing rejects members that contradict their index") {
    const BasicTuple basic = preset_tuple("sid");
    const Generation gen =
        build_generation(basic, make_lambda_config(basic, Q("5"), false), 1);
    Json j = generation_to_json(gen);
    j["members"][0]["values"][0] = "999";
    CHECK_THROWS_AS(generation_from_json(j), std::invalid_argument);

    Json missing = generation_to_json(gen);
    missing["members"].erase(0);
    CHECK_THROWS_AS(generation_from_json(missing), std::invalid_argument);
}

TEST_CASE("pairwise relation report serialization carries the sign split") {
    const BasicTuple basic = preset_tuple("sid");
    const Generation gen =
        build_generation(basic, make_lambda_config(basic, Q("5"), false), 3);
    const Json j = to_json(verify_divergence_relations(gen));
    CHECK(j["pairs_checked"] == 351);
    CHECK(j["sign_violations"] == 0);
    CHECK(j["violations"].size() == 28);
    CHECK(j["violations"][0]["expected"] == "-1/3");
}

TEST_SUITE_END();
