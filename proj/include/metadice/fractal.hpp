#pragma once

/**
 * @file fractal.hpp
 * @brief Similarity dimension, Euclidean embedding of dice generations,
 *        exact affine-rank analysis and point-cloud export.
 */

#include "metadice/generation.hpp"

#include <string>
#include <vector>

namespace metadice {

struct DimensionReport {
    int m = 0;
    Rational lambda;
    double d = 0.0;      ///< ln m / ln lambda
    double d_sup = 0.0;  ///< ln m / ln(1 + R/r), the per-tuple upper bound
    Rational r;
    Rational R;
    bool fractal_dust = false;  ///< d < 1: totally disconnected regime
};

/// ln m / ln lambda for a set of m copies of itself scaled by 1/lambda.
/// Requires m >= 3 and lambda > 1.
double similarity_dimension(int m, const Rational& lambda);

/// The tuple-specific bound ln m / ln(1 + R/r).
double dimension_sup(const BasicTuple& basic);

DimensionReport dimension_report(const BasicTuple& basic, const Rational& lambda);

/// Exact rational points, one per generation member, with the points kept
/// in index order.
struct PointCloud {
    std::size_t dimension = 0;
    std::vector<std::pair<Index, std::vector<Rational>>> points;
    int affine_rank = 0;
};

/// Associates with each member the point (x(0), x(1/n), ..., x((n-1)/n)),
/// where n is the common equal-width grid of the basic tuple (the lcm of
/// its breakpoint denominators). Throws when a member does not live on
/// that grid.
PointCloud embed_points(const Generation& gen);

/// Exact affine rank: the rank over the rationals of the difference matrix
/// (p_i - p_1), computed fraction-free. 0 means all points coincide,
/// 1 collinear, 2 coplanar in 3 coordinates. Throws on an empty cloud.
int affine_rank(const PointCloud& cloud);

/// Header `index,x1,...,xn`, one row per point in index order, coordinates
/// as exact rational strings.
std::string export_csv(const PointCloud& cloud);

/// Inverse of export_csv; the affine rank is recomputed.
PointCloud parse_csv(const std::string& text);

struct Projection {
    enum class Kind { best_fit_plane, coordinate_pair };
    Kind kind = Kind::best_fit_plane;
    std::size_t i = 0;  ///< zero-based coordinate axes for coordinate_pair
    std::size_t j = 1;

    static Projection best_fit() { return {Kind::best_fit_plane, 0, 1}; }
    static Projection pair(std::size_t i, std::size_t j) { return {Kind::coordinate_pair, i, j}; }
};

/// Standalone SVG scatter of the cloud: one circle per point (with its
/// index as the hover title), annotated axes, deterministic output.
/// best_fit_plane projects onto an orthonormal basis of the exact affine
/// span; a rank-0 cloud falls back to the first two coordinates with a
/// warning annotation. Requires dimension >= 2.
std::string export_svg(const PointCloud& cloud, const Projection& projection);

}  // namespace metadice
