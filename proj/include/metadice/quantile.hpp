#pragma once

/**
 * @file quantile.hpp
 * @brief Step quantile functions with exact rational breakpoints and values.
 */

#include "metadice/rational.hpp"

#include <span>
#include <vector>

namespace metadice {

/// Nondecreasing right-continuous step function on [0,1): the value
/// values()[j] is held on [breakpoints()[j], breakpoints()[j+1]).
///
/// The representation is canonical — equal adjacent values are coalesced —
/// so structural equality (operator==) coincides with pointwise equality.
class StepQuantile {
public:
    /// Validates breakpoints (strictly increasing, first 0, last 1) and
    /// values (nondecreasing, one per interval), then coalesces.
    StepQuantile(std::vector<Rational> breakpoints, std::vector<Rational> values);

    static StepQuantile constant(const Rational& value);
    static StepQuantile zero();

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& values() const { return values_; }
    std::size_t piece_count() const { return values_.size(); }
    Rational width(std::size_t piece) const;

    /// x(u) for u in [0,1). u = 0 is allowed and returns the lowest value;
    /// anything outside [0,1) throws std::invalid_argument.
    Rational operator()(const Rational& u) const;

    const Rational& min_value() const { return values_.front(); }
    const Rational& max_value() const { return values_.back(); }

    bool operator==(const StepQuantile&) const = default;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
};

/// Lexicographic order (breakpoints, then values); for ordered containers.
bool operator<(const StepQuantile& a, const StepQuantile& b);

/// Quantile function of an n-sided die: faces are sorted nondecreasingly
/// and face j is held on [(j-1)/n, j/n). Throws on an empty face list.
StepQuantile make_dice(std::vector<Rational> faces);

/// Same as q(u).
Rational evaluate(const StepQuantile& q, const Rational& u);

/// shift(u) + scale * x(u); scale must be positive.
StepQuantile affine(const StepQuantile& shift, const Rational& scale, const StepQuantile& x);

struct Separation {
    Rational r;  ///< smallest gap between values of two distinct members
    Rational R;  ///< largest gap between values of two distinct members
};

/// min/max of |c - c'| over all value pairs taken from two distinct tuple
/// members. Throws std::invalid_argument on fewer than 2 members and
/// ValidationError when two distinct members share a value (r would be 0).
Separation compute_separation(std::span<const StepQuantile> tuple);

/// Double-precision sibling of StepQuantile. Exists only for constructions
/// with irrational breakpoints; ordering requirements are checked exactly
/// (no tolerance).
class FloatQuantile {
public:
    FloatQuantile(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t piece_count() const { return values_.size(); }

    /// x(u) for u in [0,1).
    double operator()(double u) const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

namespace detail {
/// Index j with u in [breakpoints[j], breakpoints[j+1]); u must be in [0,1).
std::size_t piece_index(std::span<const Rational> breakpoints, const Rational& u);
}  // namespace detail

}  // namespace metadice
