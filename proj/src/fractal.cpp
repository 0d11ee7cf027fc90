#include "metadice/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace metadice {

double similarity_dimension(int m, const Rational& lambda) {
    if (m < 3) {
        throw std::invalid_argument("similarity_dimension: m must be >= 3");
    }
    if (lambda <= 1) {
        throw std::invalid_argument("similarity_dimension: lambda must exceed 1");
    }
    return std::log(static_cast<double>(m)) / std::log(to_double(lambda));
}

double dimension_sup(const BasicTuple& basic) {
    const Rational bound = Rational(1) + basic.R() / basic.r();
    return std::log(static_cast<double>(basic.size())) / std::log(to_double(bound));
}

DimensionReport dimension_report(const BasicTuple& basic, const Rational& lambda) {
    DimensionReport report;
    report.m = static_cast<int>(basic.size());
    report.lambda = lambda;
    report.d = similarity_dimension(report.m, lambda);
    report.d_sup = dimension_sup(basic);
    report.r = basic.r();
    report.R = basic.R();
    report.fractal_dust = report.d < 1.0;
    return report;
}

namespace {

/// Smallest n such that every breakpoint of every basic member is a
/// multiple of 1/n.
Integer common_grid(const BasicTuple& basic) {
    Integer n = 1;
    for (const StepQuantile& member : basic.members()) {
        for (const Rational& u : member.breakpoints()) {
            n = boost::multiprecision::lcm(n, denominator(u));
        }
    }
    return n;
}

}  // namespace

PointCloud embed_points(const Generation& gen) {
    const Integer n_big = common_grid(gen.basic());
    if (n_big > 4096) {
        throw std::invalid_argument("embed_points: common grid is finer than 1/4096");
    }
    const unsigned n = n_big.convert_to<unsigned>();

    PointCloud cloud;
    cloud.dimension = n;
    cloud.points.reserve(gen.members().size());
    for (const auto& [index, fn] : gen.members()) {
        for (const Rational& u : fn.breakpoints()) {
            if (denominator(u) > n_big || n_big % denominator(u) != 0) {
                throw std::invalid_argument("embed_points: member " + index_to_string(index) +
                                            " is not constant on the 1/" + n_big.str() + " grid");
            }
        }
        std::vector<Rational> coords;
        coords.reserve(n);
        for (unsigned j = 0; j < n; ++j) {
            coords.push_back(fn(make_rational(Integer(j), Integer(n))));
        }
        cloud.points.emplace_back(index, std::move(coords));
    }
    cloud.affine_rank = affine_rank(cloud);
    return cloud;
}

namespace {

/// Rank by fraction-free (Bareiss) elimination over exact integers.
int integer_matrix_rank(std::vector<std::vector<Integer>> a) {
    if (a.empty()) {
        return 0;
    }
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(a[rank], a[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                a[i][c] = (a[rank][col] * a[i][c] - a[i][col] * a[rank][c]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<std::vector<Integer>> difference_matrix(const PointCloud& cloud) {
    std::vector<std::vector<Integer>> rows;
    const auto& origin = cloud.points.front().second;
    for (std::size_t i = 1; i < cloud.points.size(); ++i) {
        std::vector<Rational> diff(cloud.dimension);
        Integer row_lcm = 1;
        for (std::size_t c = 0; c < cloud.dimension; ++c) {
            diff[c] = cloud.points[i].second[c] - origin[c];
            row_lcm = boost::multiprecision::lcm(row_lcm, denominator(diff[c]));
        }
        // scaling a row by a positive integer leaves the rank unchanged
        std::vector<Integer> row(cloud.dimension);
        for (std::size_t c = 0; c < cloud.dimension; ++c) {
            row[c] = numerator(diff[c]) * (row_lcm / denominator(diff[c]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

int affine_rank(const PointCloud& cloud) {
    if (cloud.points.empty()) {
        throw std::invalid_argument("affine_rank: empty point cloud");
    }
    if (cloud.points.size() == 1) {
        return 0;
    }
    return integer_matrix_rank(difference_matrix(cloud));
}

std::string export_csv(const PointCloud& cloud) {
    std::string out = "index";
    for (std::size_t c = 1; c <= cloud.dimension; ++c) {
        out += ",x" + std::to_string(c);
    }
    out += "\n";
    for (const auto& [index, coords] : cloud.points) {
        for (int digit : index) {
            if (digit > 9) {
                throw std::invalid_argument("export_csv: digit-string indexes support digits 1..9");
            }
        }
        out += index_to_string(index);
        for (const Rational& coord : coords) {
            out += "," + to_string(coord);
        }
        out += "\n";
    }
    return out;
}

PointCloud parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("parse_csv: missing header");
    }
    std::size_t dimension = 0;
    {
        std::istringstream header(line);
        std::string cell;
        if (!std::getline(header, cell, ',') || cell != "index") {
            throw std::invalid_argument("parse_csv: header must start with 'index'");
        }
        while (std::getline(header, cell, ',')) {
            ++dimension;
            if (cell != "x" + std::to_string(dimension)) {
                throw std::invalid_argument("parse_csv: unexpected header column '" + cell + "'");
            }
        }
    }
    PointCloud cloud;
    cloud.dimension = dimension;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        Index index;
        for (char ch : cell) {
            if (ch < '1' || ch > '9') {
                throw std::invalid_argument("parse_csv: invalid index digit '" + std::string(1, ch) + "'");
            }
            index.push_back(ch - '0');
        }
        std::vector<Rational> coords;
        while (std::getline(row, cell, ',')) {
            coords.push_back(parse_rational(cell));
        }
        if (coords.size() != dimension) {
            throw std::invalid_argument("parse_csv: row has " + std::to_string(coords.size()) +
                                        " coordinates, expected " + std::to_string(dimension));
        }
        cloud.points.emplace_back(std::move(index), std::move(coords));
    }
    if (cloud.points.empty()) {
        throw std::invalid_argument("parse_csv: no data rows");
    }
    cloud.affine_rank = affine_rank(cloud);
    return cloud;
}

namespace {

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4f", v);
    return buffer;
}

/// Up to two exact basis vectors of the affine span, chosen as the first
/// difference vectors (in index order) that increase the rank.
std::vector<std::vector<Rational>> span_basis(const PointCloud& cloud) {
    std::vector<std::vector<Rational>> basis;
    const auto& origin = cloud.points.front().second;
    PointCloud probe;
    probe.dimension = cloud.dimension;
    probe.points.emplace_back(Index{}, origin);
    int rank = 0;
    for (std::size_t i = 1; i < cloud.points.size() && basis.size() < 2; ++i) {
        probe.points.emplace_back(cloud.points[i].first, cloud.points[i].second);
        const int new_rank = affine_rank(probe);
        if (new_rank > rank) {
            rank = new_rank;
            std::vector<Rational> diff(cloud.dimension);
            for (std::size_t c = 0; c < cloud.dimension; ++c) {
                diff[c] = cloud.points[i].second[c] - origin[c];
            }
            basis.push_back(std::move(diff));
        } else {
            probe.points.pop_back();
        }
    }
    return basis;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = to_double(v[i]);
    }
    return out;
}

}  // namespace

std::string export_svg(const PointCloud& cloud, const Projection& projection) {
    if (cloud.dimension < 2) {
        throw std::invalid_argument("export_svg: need at least 2 coordinates");
    }
    if (cloud.points.empty()) {
        throw std::invalid_argument("export_svg: empty point cloud");
    }

    Projection effective = projection;
    bool fell_back = false;
    std::vector<std::vector<double>> planar(cloud.points.size(), std::vector<double>(2, 0.0));

    if (projection.kind == Projection::Kind::best_fit_plane) {
        const auto basis = span_basis(cloud);
        if (basis.empty()) {
            fell_back = true;
            effective = Projection::pair(0, 1);
        } else {
            // Orthonormalization happens in floating point; all rank
            // decisions above were exact.
            std::vector<double> e1 = to_doubles(basis[0]);
            const double n1 = std::sqrt(dot(e1, e1));
            for (double& v : e1) v /= n1;
            std::vector<double> e2(cloud.dimension, 0.0);
            if (basis.size() > 1) {
                e2 = to_doubles(basis[1]);
                const double proj = dot(e2, e1);
                for (std::size_t c = 0; c < e2.size(); ++c) e2[c] -= proj * e1[c];
                const double n2 = std::sqrt(dot(e2, e2));
                for (double& v : e2) v /= n2;
            }
            const std::vector<double> origin = to_doubles(cloud.points.front().second);
            for (std::size_t i = 0; i < cloud.points.size(); ++i) {
                std::vector<double> rel = to_doubles(cloud.points[i].second);
                for (std::size_t c = 0; c < rel.size(); ++c) rel[c] -= origin[c];
                planar[i][0] = dot(rel, e1);
                planar[i][1] = dot(rel, e2);
            }
        }
    }
    if (effective.kind == Projection::Kind::coordinate_pair) {
        if (effective.i >= cloud.dimension || effective.j >= cloud.dimension ||
            effective.i == effective.j) {
            throw std::invalid_argument("export_svg: invalid coordinate pair");
        }
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            planar[i][0] = to_double(cloud.points[i].second[effective.i]);
            planar[i][1] = to_double(cloud.points[i].second[effective.j]);
        }
    }

    double min_x = planar[0][0], max_x = planar[0][0];
    double min_y = planar[0][1], max_y = planar[0][1];
    for (const auto& p : planar) {
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    }
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    const double diagonal = std::sqrt(span_x * span_x + span_y * span_y);

    constexpr double kCanvas = 800.0;
    constexpr double kMargin = 60.0;
    const double usable = kCanvas - 2.0 * kMargin;
    const double scale = diagonal > 0.0 ? usable / std::max(span_x, span_y) : 1.0;
    const double radius = diagonal > 0.0 ? diagonal * scale / 200.0 : 4.0;

    auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
    auto sy = [&](double y) { return kCanvas - kMargin - (y - min_y) * scale; };  // y up

    std::string axis_x;
    std::string axis_y;
    if (effective.kind == Projection::Kind::coordinate_pair) {
        axis_x = "x" + std::to_string(effective.i + 1);
        axis_y = "x" + std::to_string(effective.j + 1);
    } else {
        axis_x = "e1 (in-plane)";
        axis_y = "e2 (in-plane)";
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    if (fell_back) {
        svg += "  <!-- warning: degenerate cloud (affine rank 0); fell back to coordinate pair "
               "(1,2) -->\n";
    }
    svg += "  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    svg += "  <line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kCanvas - kMargin) + "\" x2=\"" +
           fmt(kCanvas - kMargin) + "\" y2=\"" + fmt(kCanvas - kMargin) +
           "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg += "  <line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kCanvas - kMargin) + "\" x2=\"" +
           fmt(kMargin) + "\" y2=\"" + fmt(kMargin) + "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + fmt(kCanvas - kMargin) + "\" y=\"" + fmt(kCanvas - kMargin + 30.0) +
           "\" text-anchor=\"end\" font-size=\"14\">" + axis_x + "</text>\n";
    svg += "  <text x=\"" + fmt(kMargin - 40.0) + "\" y=\"" + fmt(kMargin) +
           "\" font-size=\"14\">" + axis_y + "</text>\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        svg += "  <circle cx=\"" + fmt(sx(planar[i][0])) + "\" cy=\"" + fmt(sy(planar[i][1])) +
               "\" r=\"" + fmt(radius) + "\" fill=\"#1f5fbf\" fill-opacity=\"0.85\">";
        svg += "<title>" + index_to_string(cloud.points[i].first) + "</title></circle>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace metadice
