#include "doctest.h"

#include "helpers.hpp"
#include "metadice/fractal.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace metadice;
using testutil::Q;
using testutil::dice;

namespace {

Generation sid_gen(int k, long long lambda = 5) {
    const BasicTuple basic = preset_tuple("sid");
    return build_generation(basic, make_lambda_config(basic, Rational(lambda), false), k);
}

// parses "cx"/"cy"/"r" attributes of every circle element
struct Circle {
    double cx, cy, r;
};

std::vector<Circle> circles_of(const std::string& svg) {
    std::vector<Circle> out;
    std::size_t pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        auto attr = [&](const char* name) {
            const std::string key = std::string(name) + "=\"";
            const std::size_t start = svg.find(key, pos) + key.size();
            return std::stod(svg.substr(start, svg.find('"', start) - start));
        };
        out.push_back({attr("cx"), attr("cy"), attr("r")});
        ++pos;
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("fractal");

TEST_CASE("similarity dimension closed form") {
    CHECK(similarity_dimension(3, Q("5")) == doctest::Approx(0.6826).epsilon(5e-5));
    CHECK(similarity_dimension(4, Q("7")) == doctest::Approx(0.7124).epsilon(5e-5));
    CHECK(similarity_dimension(3, Q("9")) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(similarity_dimension(3, Q("1")), std::invalid_argument);
    CHECK_THROWS_AS(similarity_dimension(3, Q("1/2")), std::invalid_argument);
    CHECK_THROWS_AS(similarity_dimension(2, Q("5")), std::invalid_argument);
}

TEST_CASE("per-tuple dimension bound") {
    CHECK(dimension_sup(preset_tuple("ed")) == doctest::Approx(0.7124).epsilon(5e-5));
    CHECK(dimension_sup(preset_tuple("sid")) == doctest::Approx(0.6826).epsilon(5e-5));
    CHECK(dimension_sup(preset_tuple("cid")) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bound equals the dimension at the minimal contraction") {
    for (const char* name : {"ed", "sid", "cid"}) {
        const BasicTuple basic = preset_tuple(name);
        const Rational boundary = Rational(1) + basic.R() / basic.r();
        CHECK(similarity_dimension(static_cast<int>(basic.size()), boundary) ==
              doctest::Approx(dimension_sup(basic)).epsilon(1e-12));
    }
}

TEST_CASE("dimension report flags the dust regime") {
    const DimensionReport report = dimension_report(preset_tuple("sid"), Q("6"));
    CHECK(report.m == 3);
    CHECK(report.d == doctest::Approx(std::log(3.0) / std::log(6.0)).epsilon(1e-12));
    CHECK(report.d_sup == doctest::Approx(0.6826).epsilon(5e-5));
    CHECK(report.d < report.d_sup);
    CHECK(report.fractal_dust);
    CHECK(report.r == Q("1"));
    CHECK(report.R == Q("4"));
}

TEST_CASE("embedding the third generation gives 27 coplanar points") {
    const PointCloud cloud = embed_points(sid_gen(3));
    CHECK(cloud.dimension == 3);
    CHECK(cloud.points.size() == 27);
    CHECK(cloud.affine_rank == 2);
}

TEST_CASE("embedding coordinates are the scaled faces") {
    const PointCloud cloud = embed_points(sid_gen(1));
    CHECK(cloud.points.size() == 3);
    CHECK(cloud.points[0].first == Index{1});
    CHECK(cloud.points[0].second == std::vector<Rational>{Q("1/5"), Q("1/5"), Q("4/5")});
}

TEST_CASE("embedding the empty generation is the origin") {
    const PointCloud cloud = embed_points(sid_gen(0));
    CHECK(cloud.points.size() == 1);
    CHECK(cloud.points[0].second == std::vector<Rational>{Q("0"), Q("0"), Q("0")});
    CHECK(cloud.affine_rank == 0);
}

TEST_CASE("aligned-grid tuple embeds on its own grid") {
    const BasicTuple cid = preset_tuple("cid");
    const PointCloud cloud =
        embed_points(build_generation(cid, minimal_lambda(cid, false), 2));
    CHECK(cloud.dimension == 3);
    CHECK(cloud.points.size() == 9);
    CHECK(cloud.affine_rank == 2);
}

TEST_CASE("six-sided tuple embeds in six coordinates") {
    const BasicTuple ed = preset_tuple("ed");
    const PointCloud cloud = embed_points(build_generation(ed, minimal_lambda(ed, false), 2));
    CHECK(cloud.dimension == 6);
    CHECK(cloud.points.size() == 16);
    CHECK(cloud.affine_rank >= 1);
    CHECK(cloud.affine_rank <= 6);
}

TEST_CASE("affine rank distinguishes degenerate shapes") {
    PointCloud cloud;
    cloud.dimension = 3;
    cloud.points = {{Index{1}, {Q("1"), Q("2"), Q("3")}}};
    CHECK(affine_rank(cloud) == 0);

    cloud.points.push_back({Index{2}, {Q("2"), Q("4"), Q("6")}});
    cloud.points.push_back({Index{3}, {Q("3"), Q("6"), Q("9")}});
    CHECK(affine_rank(cloud) == 1);  // collinear

    cloud.points.push_back({Index{4}, {Q("1"), Q("2"), Q("4")}});
    CHECK(affine_rank(cloud) == 2);

    cloud.points.push_back({Index{5}, {Q("1"), Q("3"), Q("3")}});
    CHECK(affine_rank(cloud) == 3);

    cloud.points.clear();
    CHECK_THROWS_AS(affine_rank(cloud), std::invalid_argument);
}

TEST_CASE("rank computation survives denominators of very different size") {
    PointCloud cloud;
    cloud.dimension = 2;
    cloud.points = {{Index{1}, {Q("0"), Q("0")}},
                    {Index{2}, {Q("1/1000000007"), Q("2/1000000007")}},
                    {Index{3}, {Q("3/7"), Q("6/7")}}};
    CHECK(affine_rank(cloud) == 1);  // all on the line y = 2x
}

TEST_CASE("equal-mean tuples stay inside a hyperplane for every generation") {
    for (const char* name : {"sid", "cid"}) {
        const BasicTuple basic = preset_tuple(name);
        const LambdaConfig config = minimal_lambda(basic, false);
        for (int k = 1; k <= 3; ++k) {
            const PointCloud cloud = embed_points(build_generation(basic, config, k));
            CHECK(cloud.affine_rank <= static_cast<int>(cloud.dimension) - 1);
        }
    }
}

TEST_CASE("self-similarity: the embedded cloud satisfies the set recurrence") {
    const BasicTuple basic = preset_tuple("sid");
    const LambdaConfig config = minimal_lambda(basic, false);
    const Rational eps = config.epsilon;
    for (int k = 1; k <= 3; ++k) {
        const PointCloud current = embed_points(build_generation(basic, config, k));
        const PointCloud previous = embed_points(build_generation(basic, config, k - 1));
        std::multiset<std::vector<Rational>> expected;
        for (int digit = 1; digit <= 3; ++digit) {
            std::vector<Rational> anchor;
            for (unsigned j = 0; j < 3; ++j) {
                anchor.push_back(eps * basic.member(digit)(make_rational(j, 3)));
            }
            for (const auto& [index, coords] : previous.points) {
                std::vector<Rational> shifted(3);
                for (unsigned j = 0; j < 3; ++j) {
                    shifted[j] = anchor[j] + eps * coords[j];
                }
                expected.insert(std::move(shifted));
            }
        }
        std::multiset<std::vector<Rational>> actual;
        for (const auto& [index, coords] : current.points) {
            actual.insert(coords);
        }
        CHECK(expected == actual);
    }
}

TEST_CASE("cluster separation bound in the Chebyshev metric") {
    // members whose indexes diverge at position nu sit at least
    // eps^nu * (r - R*eps*(1 - eps^(k-nu))/(1 - eps)) apart
    for (const Rational& lambda : {Q("5"), Q("6")}) {
        const BasicTuple basic = preset_tuple("sid");
        const LambdaConfig config = make_lambda_config(basic, lambda, false);
        const int k = 3;
        const Generation gen = build_generation(basic, config, k);
        const PointCloud cloud = embed_points(gen);
        const Rational eps = config.epsilon;
        for (std::size_t a = 0; a < cloud.points.size(); ++a) {
            for (std::size_t b = a + 1; b < cloud.points.size(); ++b) {
                const auto nu = static_cast<unsigned>(
                    first_divergence(cloud.points[a].first, cloud.points[b].first));
                Rational chebyshev(0);
                for (unsigned j = 0; j < 3; ++j) {
                    Rational gap = cloud.points[a].second[j] - cloud.points[b].second[j];
                    if (gap < 0) gap = -gap;
                    chebyshev = std::max(chebyshev, gap);
                }
                const Rational bound =
                    rational_pow(eps, nu) *
                    (basic.r() - basic.R() * eps *
                                     (Rational(1) - rational_pow(eps, static_cast<unsigned>(k) - nu)) /
                                     (Rational(1) - eps));
                CHECK(bound > 0);
                CHECK(chebyshev >= bound);
            }
        }
    }
}

TEST_CASE("CSV export matches the documented shape") {
    const std::string csv = export_csv(embed_points(sid_gen(3)));
    std::istringstream in(csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        if (lines == 1) {
            CHECK(line == "index,x1,x2,x3");
        }
    }
    CHECK(lines == 28);
    CHECK(csv.find("111,31/125,31/125,124/125") != std::string::npos);
}

TEST_CASE("CSV of the empty generation is a single row of zeros") {
    const std::string csv = export_csv(embed_points(sid_gen(0)));
    CHECK(csv == "index,x1,x2,x3\n,0,0,0\n");
}

TEST_CASE("CSV round trip is bit exact") {
    for (int k = 0; k <= 3; ++k) {
        const PointCloud cloud = embed_points(sid_gen(k));
        const std::string csv = export_csv(cloud);
        const PointCloud parsed = parse_csv(csv);
        CHECK(parsed.dimension == cloud.dimension);
        CHECK(parsed.points == cloud.points);
        CHECK(parsed.affine_rank == cloud.affine_rank);
        CHECK(export_csv(parsed) == csv);
    }
}

TEST_CASE("CSV rejects digits beyond 9 and malformed input") {
    PointCloud cloud;
    cloud.dimension = 1;
    cloud.points = {{Index{10}, {Q("1")}}};
    CHECK_THROWS_AS(export_csv(cloud), std::invalid_argument);

    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("index,x1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("wrong,x1\n1,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("index,x1\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("index,x1\nz,2\n"), std::invalid_argument);
}

TEST_CASE("SVG of the third generation shows 27 separated circles") {
    const std::string svg = export_svg(embed_points(sid_gen(3)), Projection::best_fit());
    const std::vector<Circle> circles = circles_of(svg);
    REQUIRE(circles.size() == 27);
    CHECK(svg.find("<title>111</title>") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    const double radius = circles.front().r;
    for (std::size_t a = 0; a < circles.size(); ++a) {
        CHECK(circles[a].r == radius);
        for (std::size_t b = a + 1; b < circles.size(); ++b) {
            const double dx = circles[a].cx - circles[b].cx;
            const double dy = circles[a].cy - circles[b].cy;
            CHECK(std::sqrt(dx * dx + dy * dy) > 2.0 * radius);
        }
    }
}

TEST_CASE("SVG output is deterministic") {
    const PointCloud cloud = embed_points(sid_gen(2));
    CHECK(export_svg(cloud, Projection::best_fit()) == export_svg(cloud, Projection::best_fit()));
    CHECK(export_svg(cloud, Projection::pair(0, 2)) == export_svg(cloud, Projection::pair(0, 2)));
}

TEST_CASE("SVG coordinate-pair projection and edge cases") {
    const PointCloud cloud = embed_points(sid_gen(3));
    const std::string svg = export_svg(cloud, Projection::pair(0, 1));
    CHECK(circles_of(svg).size() == 27);
    CHECK(svg.find(">x1<") != std::string::npos);
    CHECK(svg.find(">x2<") != std::string::npos);
    CHECK_THROWS_AS(export_svg(cloud, Projection::pair(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(export_svg(cloud, Projection::pair(0, 9)), std::invalid_argument);
}

TEST_CASE("SVG of a single point falls back with a warning") {
    const PointCloud cloud = embed_points(sid_gen(0));
    const std::string svg = export_svg(cloud, Projection::best_fit());
    CHECK(circles_of(svg).size() == 1);
    CHECK(svg.find("warning: degenerate cloud") != std::string::npos);

    PointCloud narrow;
    narrow.dimension = 1;
    narrow.points = {{Index{1}, {Q("1")}}};
    CHECK_THROWS_AS(export_svg(narrow, Projection::best_fit()), std::invalid_argument);
}

TEST_SUITE_END();
