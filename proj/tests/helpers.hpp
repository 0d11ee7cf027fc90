#pragma once

// Shared fixtures and independent oracles for the test suites.

#include "metadice/fractal.hpp"
#include "metadice/generation.hpp"
#include "metadice/preference.hpp"
#include "metadice/presets.hpp"
#include "metadice/quantile.hpp"

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

using namespace metadice;

inline Rational Q(const char* text) { return parse_rational(text); }

inline std::vector<Rational> faces(std::initializer_list<long long> values) {
    std::vector<Rational> out;
    for (long long v : values) {
        out.emplace_back(v);
    }
    return out;
}

inline StepQuantile dice(std::initializer_list<long long> values) {
    return make_dice(faces(values));
}

// ---- randomized inputs (all seeded by the caller) ---------------------

inline Rational random_rational(std::mt19937_64& rng, long long lo, long long hi,
                                long long max_den) {
    std::uniform_int_distribution<long long> num(lo, hi);
    std::uniform_int_distribution<long long> den(1, max_den);
    return make_rational(Integer(num(rng)), Integer(den(rng)));
}

inline StepQuantile random_dice(std::mt19937_64& rng, std::size_t max_faces = 6) {
    std::uniform_int_distribution<std::size_t> count(1, max_faces);
    const std::size_t n = count(rng);
    std::vector<Rational> f;
    f.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.push_back(random_rational(rng, -20, 20, 8));
    }
    return make_dice(std::move(f));
}

/// A uniform draw from (0,1) as an exact rational.
inline Rational random_unit(std::mt19937_64& rng, long long max_den = 1000) {
    std::uniform_int_distribution<long long> den(2, max_den);
    const long long d = den(rng);
    std::uniform_int_distribution<long long> num(1, d - 1);
    return make_rational(Integer(num(rng)), Integer(d));
}

// ---- independent oracles ----------------------------------------------

/// Preference value of two equal-width dice straight from the face lists:
/// (1/(n*m)) * sum of sign(a_i - b_j). Independent of the piece-merging
/// path used by rho_q.
inline Rational brute_rho_faces(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational total(0);
    for (const Rational& x : a) {
        for (const Rational& y : b) {
            if (x > y) total += 1;
            if (x < y) total -= 1;
        }
    }
    return total / Rational(static_cast<long long>(a.size() * b.size()));
}

/// min/max |q1(u1) - q2(u2)| over a grid that hits every piece of every
/// function at least once (piece left endpoints).
struct BruteSeparation {
    Rational r;
    Rational R;
    bool collision = false;
};

inline BruteSeparation brute_separation(const std::vector<StepQuantile>& tuple) {
    BruteSeparation out;
    bool have = false;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            if (i == j) continue;
            for (const Rational& u1 : tuple[i].breakpoints()) {
                if (u1 == 1) continue;
                for (const Rational& u2 : tuple[j].breakpoints()) {
                    if (u2 == 1) continue;
                    Rational gap = tuple[i](u1) - tuple[j](u2);
                    if (gap < 0) gap = -gap;
                    if (gap == 0) out.collision = true;
                    if (!have) {
                        out.r = gap;
                        out.R = gap;
                        have = true;
                    } else {
                        out.r = std::min(out.r, gap);
                        out.R = std::max(out.R, gap);
                    }
                }
            }
        }
    }
    return out;
}

/// What the preference value of two generation members actually is, derived
/// independently of rho_q's piece merging: the members agree on the shared
/// prefix function g, so only the diagonal blocks of g's constancy pieces
/// contribute, and there sign(a(u1) - b(u2)) decides.
inline Rational block_diagonal_rho(const BasicTuple& basic, const LambdaConfig& config,
                                   const Index& first, const Index& second) {
    const std::size_t nu = first_divergence(first, second);
    const Index prefix(first.begin(), first.begin() + (nu - 1));
    const StepQuantile g = function_for_index(basic, config, prefix);
    const StepQuantile& a = basic.member(first[nu - 1]);
    const StepQuantile& b = basic.member(second[nu - 1]);

    Rational total(0);
    for (std::size_t s = 0; s < g.piece_count(); ++s) {
        const Rational lo = g.breakpoints()[s];
        const Rational hi = g.breakpoints()[s + 1];
        // refine [lo, hi) against the pieces of a and b
        std::vector<Rational> grid{lo};
        for (const Rational& u : a.breakpoints()) {
            if (u > lo && u < hi) grid.push_back(u);
        }
        for (const Rational& u : b.breakpoints()) {
            if (u > lo && u < hi) grid.push_back(u);
        }
        grid.push_back(hi);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        for (std::size_t p = 0; p + 1 < grid.size(); ++p) {
            for (std::size_t q = 0; q + 1 < grid.size(); ++q) {
                const Rational av = a(grid[p]);
                const Rational bv = b(grid[q]);
                const int sign = av > bv ? 1 : (av < bv ? -1 : 0);
                if (sign != 0) {
                    total += (grid[p + 1] - grid[p]) * (grid[q + 1] - grid[q]) * sign;
                }
            }
        }
    }
    return total;
}

/// Applies u -> a + b*x(u) to every member (b > 0); preserves the cycle and
/// scales the separation, so the result is again a valid basic tuple.
inline std::vector<StepQuantile> transformed_preset(std::string_view name, const Rational& shift,
                                                    const Rational& scale) {
    std::vector<StepQuantile> out;
    const StepQuantile shift_fn = StepQuantile::constant(shift);
    const BasicTuple basic = preset_tuple(name);
    for (const StepQuantile& member : basic.members()) {
        out.push_back(affine(shift_fn, scale, member));
    }
    return out;
}

}  // namespace testutil
