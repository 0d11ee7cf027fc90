#include "metadice/preference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace metadice {

namespace {

int sign_compare(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

int sign_compare(double a, double b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

// Top 53 bits of a 64-bit draw, mapped to [0,1).
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> interior_thresholds(const StepQuantile& q) {
    std::vector<double> t;
    for (std::size_t j = 1; j + 1 < q.breakpoints().size(); ++j) {
        t.push_back(to_double(q.breakpoints()[j]));
    }
    return t;
}

std::vector<double> interior_thresholds(const FloatQuantile& q) {
    return {q.breakpoints().begin() + 1, q.breakpoints().end() - 1};
}

template <typename Q>
MonteCarloEstimate monte_carlo_rho_impl(const Q& x1, const Q& x2, std::uint64_t trials,
                                        std::uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo_rho: trials must be >= 1");
    }
    // Interval thresholds in double; the sign of each value pair is fixed
    // per piece, so trials reduce to two interval lookups per draw.
    const std::vector<double> t1 = interior_thresholds(x1);
    const std::vector<double> t2 = interior_thresholds(x2);
    const std::size_t n1 = x1.piece_count();
    const std::size_t n2 = x2.piece_count();
    std::vector<int> sign_table(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            sign_table[i * n2 + j] = sign_compare(x1.values()[i], x2.values()[j]);
        }
    }

    std::mt19937_64 rng(seed);
    std::int64_t sum = 0;
    std::uint64_t nonzero = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u1 = uniform01(rng);
        const double u2 = uniform01(rng);
        const std::size_t i = std::upper_bound(t1.begin(), t1.end(), u1) - t1.begin();
        const std::size_t j = std::upper_bound(t2.begin(), t2.end(), u2) - t2.begin();
        const int s = sign_table[i * n2 + j];
        sum += s;
        nonzero += (s != 0);
    }
    const double n = static_cast<double>(trials);
    const double mean = static_cast<double>(sum) / n;
    // sign^2 is 1 exactly when the sign is nonzero
    double variance = 0.0;
    if (trials > 1) {
        variance = (static_cast<double>(nonzero) - n * mean * mean) / (n - 1.0);
        variance = std::max(variance, 0.0);
    }
    return {mean, std::sqrt(variance / n)};
}

}  // namespace

PreferenceValue rho_q(const StepQuantile& x1, const StepQuantile& x2) {
    Rational total(0);
    for (std::size_t i = 0; i < x1.piece_count(); ++i) {
        const Rational w = x1.width(i);
        for (std::size_t j = 0; j < x2.piece_count(); ++j) {
            const int s = sign_compare(x1.values()[i], x2.values()[j]);
            if (s != 0) {
                total += w * x2.width(j) * s;
            }
        }
    }
    return {std::move(total)};
}

double rho_q(const FloatQuantile& x1, const FloatQuantile& x2) {
    double total = 0.0;
    for (std::size_t i = 0; i < x1.piece_count(); ++i) {
        const double w = x1.breakpoints()[i + 1] - x1.breakpoints()[i];
        for (std::size_t j = 0; j < x2.piece_count(); ++j) {
            const double v = x2.breakpoints()[j + 1] - x2.breakpoints()[j];
            total += w * v * sign_compare(x1.values()[i], x2.values()[j]);
        }
    }
    return total;
}

bool precedes(const StepQuantile& x, const StepQuantile& y) {
    return rho_q(y, x).value > 0;
}

WinProbabilities win_probabilities(const StepQuantile& x1, const StepQuantile& x2) {
    WinProbabilities out{Rational(0), Rational(0), Rational(0)};
    for (std::size_t i = 0; i < x1.piece_count(); ++i) {
        const Rational w = x1.width(i);
        for (std::size_t j = 0; j < x2.piece_count(); ++j) {
            const Rational mass = w * x2.width(j);
            switch (sign_compare(x1.values()[i], x2.values()[j])) {
                case -1: out.less += mass; break;
                case 0: out.tie += mass; break;
                case 1: out.greater += mass; break;
            }
        }
    }
    return out;
}

WinProbabilitiesF win_probabilities(const FloatQuantile& x1, const FloatQuantile& x2) {
    WinProbabilitiesF out{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < x1.piece_count(); ++i) {
        const double w = x1.breakpoints()[i + 1] - x1.breakpoints()[i];
        for (std::size_t j = 0; j < x2.piece_count(); ++j) {
            const double mass = w * (x2.breakpoints()[j + 1] - x2.breakpoints()[j]);
            switch (sign_compare(x1.values()[i], x2.values()[j])) {
                case -1: out.less += mass; break;
                case 0: out.tie += mass; break;
                case 1: out.greater += mass; break;
            }
        }
    }
    return out;
}

CycleReport cycle_report(std::span<const StepQuantile> tuple) {
    const std::size_t m = tuple.size();
    if (m < 3) {
        throw std::invalid_argument("cycle_report: need at least 3 functions");
    }
    CycleReport report;
    bool all_ties_zero = true;
    bool all_edges_preferred = true;
    for (std::size_t i = 0; i < m; ++i) {
        const StepQuantile& current = tuple[i];
        const StepQuantile& next = tuple[(i + 1) % m];
        WinProbabilities wp = win_probabilities(current, next);
        if (wp.tie != 0) all_ties_zero = false;
        if (!(wp.less > wp.greater)) all_edges_preferred = false;  // rho(next, current) <= 0
        report.pairwise_probabilities.push_back(std::move(wp.less));
        report.tie_probabilities.push_back(std::move(wp.tie));
    }
    report.min_probability = *std::min_element(report.pairwise_probabilities.begin(),
                                               report.pairwise_probabilities.end());
    // With zero ties the two formulations coincide: P(less) > P(greater)
    // on every edge is exactly min > 1/2.
    report.is_intransitive =
        all_ties_zero ? report.min_probability > Rational(1, 2) : all_edges_preferred;
    return report;
}

double trybula_bound(int m) {
    if (m < 3) {
        throw std::invalid_argument("trybula_bound: m must be >= 3");
    }
    const double c = std::cos(std::numbers::pi / (m + 2));
    return 1.0 - 1.0 / (4.0 * c * c);
}

TrybulaTriplet trybula_triplet(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("trybula_triplet: p must be in (0,1)");
    }
    return {
        FloatQuantile({0.0, p, 1.0}, {1.0, 4.0}),
        FloatQuantile({0.0, 1.0}, {2.0}),
        FloatQuantile({0.0, 1.0 - p, 1.0}, {0.0, 3.0}),
    };
}

std::array<StepQuantile, 3> trybula_triplet_exact(const Rational& p) {
    if (!(p > 0 && p < 1)) {
        throw std::invalid_argument("trybula_triplet: p must be in (0,1)");
    }
    return {
        StepQuantile({Rational(0), p, Rational(1)}, {Rational(1), Rational(4)}),
        StepQuantile::constant(Rational(2)),
        StepQuantile({Rational(0), Rational(1) - p, Rational(1)}, {Rational(0), Rational(3)}),
    };
}

MonteCarloEstimate monte_carlo_rho(const StepQuantile& x1, const StepQuantile& x2,
                                   std::uint64_t trials, std::uint64_t seed) {
    return monte_carlo_rho_impl(x1, x2, trials, seed);
}

MonteCarloEstimate monte_carlo_rho(const FloatQuantile& x1, const FloatQuantile& x2,
                                   std::uint64_t trials, std::uint64_t seed) {
    return monte_carlo_rho_impl(x1, x2, trials, seed);
}

}  // namespace metadice
