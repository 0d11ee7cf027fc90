#pragma once

/**
 * @file preference.hpp
 * @brief Stochastic precedence: exact preference values, win probabilities,
 *        cycle verification and the classical triplet/bound constructions.
 */

#include "metadice/quantile.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace metadice {

/// E sign(X1 - X2) for independent X1, X2 with the given quantile
/// functions; always in [-1, 1].
struct PreferenceValue {
    Rational value;
    bool operator==(const PreferenceValue&) const = default;
};

/// Exact double integral of sign(x1(u1) - x2(u2)) over the unit square,
/// collapsed to a finite sum over the step pieces.
PreferenceValue rho_q(const StepQuantile& x1, const StepQuantile& x2);
double rho_q(const FloatQuantile& x1, const FloatQuantile& x2);

/// x stochastically precedes y: y wins more often than it loses.
bool precedes(const StepQuantile& x, const StepQuantile& y);

struct WinProbabilities {
    Rational less;
    Rational tie;
    Rational greater;
};

/// Exact P(X1 < X2), P(X1 = X2), P(X1 > X2); the three sum to 1.
WinProbabilities win_probabilities(const StepQuantile& x1, const StepQuantile& x2);

struct WinProbabilitiesF {
    double less;
    double tie;
    double greater;
};
WinProbabilitiesF win_probabilities(const FloatQuantile& x1, const FloatQuantile& x2);

struct CycleReport {
    std::vector<Rational> pairwise_probabilities;  ///< P(X_i < X_{i+1}) around the cycle
    std::vector<Rational> tie_probabilities;       ///< P(X_i = X_{i+1}) around the cycle
    Rational min_probability;                      ///< min of pairwise_probabilities
    bool is_intransitive;
};

/// Evaluates the cycle X_1 -> X_2 -> ... -> X_m -> X_1 exactly, in the
/// given order. With all ties zero the tuple is intransitive iff the
/// minimum probability exceeds 1/2; with ties present the flag requires a
/// strictly positive preference value on every edge instead. m >= 3.
CycleReport cycle_report(std::span<const StepQuantile> tuple);

/// 1 - (4 cos^2(pi/(m+2)))^{-1}: the maximum of the minimal cycle
/// probability over independent random variables. m >= 3.
double trybula_bound(int m);

/// The extremal triplet attaining trybula_bound(3) at the golden p:
/// X is 1 w.p. p and 4 w.p. 1-p, Y is the constant 2, Z is 0 w.p. 1-p
/// and 3 w.p. p. Requires 0 < p < 1.
struct TrybulaTriplet {
    FloatQuantile x;
    FloatQuantile y;
    FloatQuantile z;
};
TrybulaTriplet trybula_triplet(double p);

/// Same triplet for rational p, represented exactly.
std::array<StepQuantile, 3> trybula_triplet_exact(const Rational& p);

struct MonteCarloEstimate {
    double estimate;
    double standard_error;
};

/// Averages sign(x1(U1) - x2(U2)) over independent uniform pairs.
///
/// Reproducible bit-for-bit for a fixed seed: the generator is
/// std::mt19937_64 (pinned by the language standard), uniforms are the top
/// 53 bits mapped to [0,1), and each trial draws U1 first, then U2. Value
/// comparisons are exact (a precomputed sign table over the step pieces).
MonteCarloEstimate monte_carlo_rho(const StepQuantile& x1, const StepQuantile& x2,
                                   std::uint64_t trials, std::uint64_t seed);
MonteCarloEstimate monte_carlo_rho(const FloatQuantile& x1, const FloatQuantile& x2,
                                   std::uint64_t trials, std::uint64_t seed);

}  // namespace metadice
