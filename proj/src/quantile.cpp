#include "metadice/quantile.hpp"

#include "metadice/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace metadice {

namespace {

void coalesce(std::vector<Rational>& breakpoints, std::vector<Rational>& values) {
    std::vector<Rational> bp;
    std::vector<Rational> vals;
    bp.reserve(breakpoints.size());
    vals.reserve(values.size());
    bp.push_back(std::move(breakpoints.front()));
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!vals.empty() && vals.back() == values[j]) {
            bp.back() = std::move(breakpoints[j + 1]);  // extend previous piece
        } else {
            vals.push_back(std::move(values[j]));
            bp.push_back(std::move(breakpoints[j + 1]));
        }
    }
    breakpoints = std::move(bp);
    values = std::move(vals);
}

}  // namespace

namespace detail {

std::size_t piece_index(std::span<const Rational> breakpoints, const Rational& u) {
    if (u < 0 || u >= 1) {
        throw std::invalid_argument("quantile: argument " + to_string(u) + " outside [0,1)");
    }
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), u);
    return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

}  // namespace detail

StepQuantile::StepQuantile(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) {
        throw std::invalid_argument("step quantile: need at least two breakpoints");
    }
    if (values_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("step quantile: need exactly one value per interval");
    }
    if (breakpoints_.front() != 0 || breakpoints_.back() != 1) {
        throw std::invalid_argument("step quantile: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
        if (!(breakpoints_[j - 1] < breakpoints_[j])) {
            throw std::invalid_argument("step quantile: breakpoints must be strictly increasing");
        }
    }
    for (std::size_t j = 1; j < values_.size(); ++j) {
        if (values_[j] < values_[j - 1]) {
            throw std::invalid_argument("step quantile: values must be nondecreasing");
        }
    }
    coalesce(breakpoints_, values_);
}

StepQuantile StepQuantile::constant(const Rational& value) {
    return StepQuantile({Rational(0), Rational(1)}, {value});
}

StepQuantile StepQuantile::zero() {
    return constant(Rational(0));
}

Rational StepQuantile::width(std::size_t piece) const {
    return breakpoints_[piece + 1] - breakpoints_[piece];
}

Rational StepQuantile::operator()(const Rational& u) const {
    return values_[detail::piece_index(breakpoints_, u)];
}

bool operator<(const StepQuantile& a, const StepQuantile& b) {
    if (a.breakpoints() != b.breakpoints()) {
        return std::lexicographical_compare(a.breakpoints().begin(), a.breakpoints().end(),
                                            b.breakpoints().begin(), b.breakpoints().end());
    }
    return std::lexicographical_compare(a.values().begin(), a.values().end(),
                                        b.values().begin(), b.values().end());
}

StepQuantile make_dice(std::vector<Rational> faces) {
    if (faces.empty()) {
        throw std::invalid_argument("make_dice: empty face list");
    }
    std::sort(faces.begin(), faces.end());
    const auto n = faces.size();
    std::vector<Rational> breakpoints;
    breakpoints.reserve(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        breakpoints.push_back(make_rational(Integer(j), Integer(n)));
    }
    return StepQuantile(std::move(breakpoints), std::move(faces));
}

Rational evaluate(const StepQuantile& q, const Rational& u) {
    return q(u);
}

StepQuantile affine(const StepQuantile& shift, const Rational& scale, const StepQuantile& x) {
    if (scale <= 0) {
        throw std::invalid_argument("affine: scale must be positive, got " + to_string(scale));
    }
    // Merged grid; on each refined piece both inputs are constant.
    std::vector<Rational> grid;
    grid.reserve(shift.breakpoints().size() + x.breakpoints().size());
    std::set_union(shift.breakpoints().begin(), shift.breakpoints().end(),
                   x.breakpoints().begin(), x.breakpoints().end(), std::back_inserter(grid));
    std::vector<Rational> values;
    values.reserve(grid.size() - 1);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        values.push_back(shift(grid[j]) + scale * x(grid[j]));
    }
    return StepQuantile(std::move(grid), std::move(values));
}

Separation compute_separation(std::span<const StepQuantile> tuple) {
    if (tuple.size() < 2) {
        throw std::invalid_argument("compute_separation: need at least 2 functions");
    }
    bool have = false;
    Rational r;
    Rational R;
    for (std::size_t i1 = 0; i1 < tuple.size(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < tuple.size(); ++i2) {
            for (const Rational& c1 : tuple[i1].values()) {
                for (const Rational& c2 : tuple[i2].values()) {
                    Rational gap = c1 < c2 ? Rational(c2 - c1) : Rational(c1 - c2);
                    if (gap == 0) {
                        throw ValidationError("value collision: members " + std::to_string(i1 + 1) +
                                              " and " + std::to_string(i2 + 1) +
                                              " both take the value " + to_string(c1));
                    }
                    if (!have) {
                        r = gap;
                        R = gap;
                        have = true;
                    } else {
                        if (gap < r) r = gap;
                        if (gap > R) R = gap;
                    }
                }
            }
        }
    }
    return {std::move(r), std::move(R)};
}

FloatQuantile::FloatQuantile(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("float quantile: need one value per interval");
    }
    if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw std::invalid_argument("float quantile: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
        if (!(breakpoints_[j - 1] < breakpoints_[j])) {
            throw std::invalid_argument("float quantile: breakpoints must be strictly increasing");
        }
    }
    for (std::size_t j = 1; j < values_.size(); ++j) {
        if (values_[j] < values_[j - 1]) {
            throw std::invalid_argument("float quantile: values must be nondecreasing");
        }
    }
}

double FloatQuantile::operator()(double u) const {
    if (u < 0.0 || u >= 1.0) {
        throw std::invalid_argument("float quantile: argument outside [0,1)");
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

}  // namespace metadice
