#include "metadice/generation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace metadice {

namespace {

void check_digits(const BasicTuple& basic, const Index& digits) {
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(basic.size())) {
            throw std::invalid_argument("index digit " + std::to_string(d) + " outside 1.." +
                                        std::to_string(basic.size()));
        }
    }
}

Rational admissibility_bound(const BasicTuple& basic) {
    return Rational(1) + basic.R() / basic.r();
}

void ensure_admissible(const BasicTuple& basic, const LambdaConfig& config) {
    const Rational bound = admissibility_bound(basic);
    const bool ok = config.strict ? config.lambda > bound : config.lambda >= bound;
    if (!ok) {
        throw ValidationError("lambda " + to_string(config.lambda) + " inadmissible: requires " +
                              (config.strict ? "lambda > " : "lambda >= ") + to_string(bound));
    }
    if (config.epsilon * config.lambda != 1) {
        throw ValidationError("lambda config: epsilon must equal 1/lambda");
    }
}

bool starts_with(const Index& index, const Index& prefix) {
    return index.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), index.begin());
}

/// Linear combination sum_j coefficient_j * basic_j with nonnegative
/// rational coefficients.
StepQuantile combine_basic(const BasicTuple& basic, const std::vector<Rational>& coefficients) {
    StepQuantile acc = StepQuantile::zero();
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (coefficients[j] != 0) {
            acc = affine(acc, coefficients[j], basic.member(static_cast<int>(j) + 1));
        }
    }
    return acc;
}

}  // namespace

std::string index_to_string(const Index& index) {
    std::string out;
    for (int d : index) {
        out += std::to_string(d);
    }
    return out;
}

const StepQuantile& BasicTuple::member(int digit) const {
    if (digit < 1 || digit > static_cast<int>(members_.size())) {
        throw std::invalid_argument("basic tuple: digit " + std::to_string(digit) + " outside 1.." +
                                    std::to_string(members_.size()));
    }
    return members_[static_cast<std::size_t>(digit) - 1];
}

BasicTuple validate_basic(std::vector<StepQuantile> tuple) {
    if (tuple.size() < 3) {
        throw std::invalid_argument("basic tuple: need at least 3 members");
    }
    Separation sep = compute_separation(tuple);  // throws on a value collision (r = 0)
    CycleReport cycle = cycle_report(tuple);
    if (!cycle.is_intransitive) {
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            const std::size_t next = (i + 1) % tuple.size();
            const WinProbabilities wp = win_probabilities(tuple[i], tuple[next]);
            if (!(wp.less > wp.greater)) {
                throw ValidationError(
                    "cycle broken at edge " + std::to_string(i + 1) + " -> " + std::to_string(next + 1) +
                    ": P(less) = " + to_string(wp.less) + ", P(greater) = " + to_string(wp.greater));
            }
        }
        throw ValidationError("cycle not intransitive in the stored order");
    }
    return BasicTuple(std::move(tuple), std::move(sep.r), std::move(sep.R), std::move(cycle));
}

LambdaConfig minimal_lambda(const BasicTuple& basic, bool strict) {
    const Rational bound = admissibility_bound(basic);
    Rational lambda;
    if (strict) {
        // smallest integer > bound; bound is positive
        lambda = Rational(numerator(bound) / denominator(bound) + 1);
    } else {
        lambda = bound;
    }
    return {lambda, Rational(1) / lambda, strict};
}

LambdaConfig make_lambda_config(const BasicTuple& basic, Rational lambda, bool strict) {
    if (lambda <= 1) {
        throw ValidationError("lambda must exceed 1, got " + to_string(lambda));
    }
    LambdaConfig config{lambda, Rational(1) / lambda, strict};
    ensure_admissible(basic, config);
    return config;
}

int InfiniteIndex::digit_at(std::size_t position) const {
    if (position == 0) {
        throw std::invalid_argument("infinite index: positions are 1-based");
    }
    if (position <= prefix.size()) {
        return prefix[position - 1];
    }
    return period[(position - prefix.size() - 1) % period.size()];
}

namespace {

/// Two eventually periodic words agree everywhere iff they agree on
/// max(prefix lengths) + lcm(period lengths) leading digits.
std::size_t agreement_bound(const InfiniteIndex& a, const InfiniteIndex& b) {
    return std::max(a.prefix.size(), b.prefix.size()) + std::lcm(a.period.size(), b.period.size());
}

}  // namespace

bool same_word(const InfiniteIndex& a, const InfiniteIndex& b) {
    if (a.period.empty() || b.period.empty()) {
        throw std::invalid_argument("infinite index: period must be nonempty");
    }
    const std::size_t bound = agreement_bound(a, b);
    for (std::size_t pos = 1; pos <= bound; ++pos) {
        if (a.digit_at(pos) != b.digit_at(pos)) {
            return false;
        }
    }
    return true;
}

std::size_t first_divergence(const Index& a, const Index& b) {
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (a[i] != b[i]) {
            return i + 1;
        }
    }
    if (a.size() == b.size()) {
        throw std::invalid_argument("first_divergence: indexes are identical");
    }
    return common + 1;  // one word is a proper prefix of the other
}

std::size_t first_divergence(const InfiniteIndex& a, const InfiniteIndex& b) {
    const std::size_t bound = agreement_bound(a, b);
    for (std::size_t pos = 1; pos <= bound; ++pos) {
        if (a.digit_at(pos) != b.digit_at(pos)) {
            return pos;
        }
    }
    throw std::invalid_argument("first_divergence: indexes are identical as infinite words");
}

std::vector<const StepQuantile*> Generation::group(const Index& prefix) const {
    std::vector<const StepQuantile*> out;
    for (auto it = members_.lower_bound(prefix); it != members_.end(); ++it) {
        if (!starts_with(it->first, prefix)) {
            break;
        }
        out.push_back(&it->second);
    }
    return out;
}

Generation build_generation(const BasicTuple& basic, const LambdaConfig& config, int k,
                            std::uint64_t member_cap) {
    ensure_admissible(basic, config);
    if (k < 0) {
        throw std::invalid_argument("build_generation: k must be >= 0");
    }
    const int m = static_cast<int>(basic.size());
    Integer count = 1;
    for (int i = 0; i < k; ++i) {
        count *= m;
        if (count > member_cap) {
            throw std::invalid_argument("build_generation: m^k = " + std::to_string(m) + "^" +
                                        std::to_string(k) + " exceeds the member cap of " +
                                        std::to_string(member_cap));
        }
    }

    std::map<Index, StepQuantile> members;
    members.emplace(Index{}, StepQuantile::zero());
    Rational eps_power(1);
    for (int gen = 1; gen <= k; ++gen) {
        eps_power *= config.epsilon;
        std::map<Index, StepQuantile> next;
        for (const auto& [index, fn] : members) {
            for (int digit = 1; digit <= m; ++digit) {
                Index child = index;
                child.push_back(digit);
                next.emplace(std::move(child), affine(fn, eps_power, basic.member(digit)));
            }
        }
        members = std::move(next);
    }
    return Generation(basic, config, k, std::move(members));
}

StepQuantile function_for_index(const BasicTuple& basic, const LambdaConfig& config,
                                const Index& index) {
    check_digits(basic, index);
    std::vector<Rational> coefficients(basic.size(), Rational(0));
    Rational eps_power(1);
    for (int digit : index) {
        eps_power *= config.epsilon;
        coefficients[static_cast<std::size_t>(digit) - 1] += eps_power;
    }
    return combine_basic(basic, coefficients);
}

StepQuantile infinite_index_function(const BasicTuple& basic, const LambdaConfig& config,
                                     const InfiniteIndex& index) {
    if (!config.strict) {
        throw ValidationError("infinite indexes require a strict lambda (lambda > 1 + R/r)");
    }
    ensure_admissible(basic, config);
    if (index.period.empty()) {
        throw std::invalid_argument("infinite index: period must be nonempty");
    }
    check_digits(basic, index.prefix);
    check_digits(basic, index.period);

    std::vector<Rational> coefficients(basic.size(), Rational(0));
    Rational eps_power(1);
    for (int digit : index.prefix) {
        eps_power *= config.epsilon;
        coefficients[static_cast<std::size_t>(digit) - 1] += eps_power;
    }
    // eps_power is now eps^L; the tail repeats with ratio eps^q.
    const Rational tail_scale =
        eps_power / (Rational(1) - rational_pow(config.epsilon, static_cast<unsigned>(index.period.size())));
    Rational eps_t(1);
    for (int digit : index.period) {
        eps_t *= config.epsilon;
        coefficients[static_cast<std::size_t>(digit) - 1] += tail_scale * eps_t;
    }
    return combine_basic(basic, coefficients);
}

PairwiseRelationReport verify_divergence_relations(const Generation& gen, std::uint64_t pair_cap,
                                       std::uint64_t sample_seed) {
    if (gen.k() < 1) {
        throw std::invalid_argument("verify_divergence_relations: requires k >= 1");
    }
    std::vector<const Index*> indexes;
    std::vector<const StepQuantile*> functions;
    indexes.reserve(gen.members().size());
    for (const auto& [index, fn] : gen.members()) {
        indexes.push_back(&index);
        functions.push_back(&fn);
    }
    const std::size_t count = indexes.size();

    PairwiseRelationReport report;
    auto check_pair = [&](std::size_t a, std::size_t b) {
        const std::size_t nu = first_divergence(*indexes[a], *indexes[b]);
        const Rational expected =
            rho_q(gen.basic().member((*indexes[a])[nu - 1]), gen.basic().member((*indexes[b])[nu - 1]))
                .value;
        Rational actual = rho_q(*functions[a], *functions[b]).value;
        ++report.pairs_checked;
        if (actual != expected) {
            if (sign_of(actual) != sign_of(expected)) {
                ++report.sign_violations;
            }
            report.violations.push_back({*indexes[a], *indexes[b], expected, std::move(actual)});
        }
    };

    const std::uint64_t total_pairs =
        static_cast<std::uint64_t>(count) * (count - 1) / 2;
    if (total_pairs <= pair_cap) {
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = a + 1; b < count; ++b) {
                check_pair(a, b);
            }
        }
    } else {
        report.sampled = true;
        std::mt19937_64 rng(sample_seed);
        std::uniform_int_distribution<std::size_t> pick(0, count - 1);
        for (std::uint64_t t = 0; t < pair_cap; ++t) {
            std::size_t a = pick(rng);
            std::size_t b = pick(rng);
            while (b == a) {
                b = pick(rng);
            }
            check_pair(std::min(a, b), std::max(a, b));
        }
    }
    return report;
}

BijectionReport verify_bijection(const Generation& gen) {
    BijectionReport report;
    report.member_count = gen.members().size();
    std::map<StepQuantile, const Index*> seen;
    for (const auto& [index, fn] : gen.members()) {
        auto [it, inserted] = seen.emplace(fn, &index);
        if (!inserted) {
            report.violations.push_back({*it->second, index});
        }
    }
    return report;
}

MetaIntransitivityReport verify_meta_intransitivity(const Generation& gen) {
    const int k = gen.k();
    if (k < 2) {
        throw std::invalid_argument("verify_meta_intransitivity: requires k >= 2");
    }
    const int m = static_cast<int>(gen.basic().size());
    MetaIntransitivityReport report;
    report.order = k - 1;
    report.group_levels_checked = k - 1;

    // Enumerates all prefixes of the given length and runs `edge` on every
    // consecutive sibling pair under each of them.
    auto for_each_family = [&](int prefix_length, auto&& edge) {
        Index prefix(static_cast<std::size_t>(prefix_length), 1);
        while (true) {
            ++report.tuples_checked;
            for (int from = 1; from <= m; ++from) {
                const int to = from % m + 1;
                edge(prefix, from, to);
            }
            int pos = prefix_length - 1;
            while (pos >= 0 && prefix[static_cast<std::size_t>(pos)] == m) {
                prefix[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) {
                break;
            }
            ++prefix[static_cast<std::size_t>(pos)];
        }
    };

    auto check_edge = [&](const Index& prefix, int from, int to) {
        Index from_prefix = prefix;
        from_prefix.push_back(from);
        Index to_prefix = prefix;
        to_prefix.push_back(to);
        bool edge_ok = true;
        for (const StepQuantile* x : gen.group(from_prefix)) {
            for (const StepQuantile* y : gen.group(to_prefix)) {
                ++report.comparisons;
                if (!precedes(*x, *y)) {
                    edge_ok = false;
                }
            }
        }
        if (!edge_ok) {
            report.violations.push_back({prefix, from, to});
        }
    };

    // Sibling-group levels p = 1..k-1 (prefix length p-1), then the leaf
    // cycles inside each deepest group (prefix length k-1, singleton groups).
    for (int p = 1; p <= k; ++p) {
        for_each_family(p - 1, check_edge);
    }
    return report;
}

InfinitePairwiseReport verify_divergence_relations(const BasicTuple& basic,
                                                   const LambdaConfig& config,
                                                   const std::vector<InfiniteIndex>& indexes) {
    if (!config.strict) {
        throw ValidationError("infinite-generation checks require a strict lambda");
    }
    for (std::size_t a = 0; a < indexes.size(); ++a) {
        for (std::size_t b = a + 1; b < indexes.size(); ++b) {
            if (same_word(indexes[a], indexes[b])) {
                throw std::invalid_argument("indexes " + std::to_string(a) + " and " +
                                            std::to_string(b) +
                                            " are the same infinite word in different presentations");
            }
        }
    }
    std::vector<StepQuantile> functions;
    functions.reserve(indexes.size());
    for (const InfiniteIndex& index : indexes) {
        functions.push_back(infinite_index_function(basic, config, index));
    }
    InfinitePairwiseReport report;
    report.note =
        "group-level relations of the infinite generation are attested through these "
        "representative eventually-periodic members";
    for (std::size_t a = 0; a < indexes.size(); ++a) {
        for (std::size_t b = a + 1; b < indexes.size(); ++b) {
            const std::size_t nu = first_divergence(indexes[a], indexes[b]);
            const Rational expected =
                rho_q(basic.member(indexes[a].digit_at(nu)), basic.member(indexes[b].digit_at(nu)))
                    .value;
            Rational actual = rho_q(functions[a], functions[b]).value;
            ++report.pairs_checked;
            if (actual != expected) {
                report.violations.push_back({a, b, expected, std::move(actual)});
            }
        }
    }
    return report;
}

WeightFunction::WeightFunction(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("weight function: need one value per interval");
    }
    if (breakpoints_.front() != 0 || breakpoints_.back() != 1) {
        throw std::invalid_argument("weight function: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
        if (!(breakpoints_[j - 1] < breakpoints_[j])) {
            throw std::invalid_argument("weight function: breakpoints must be strictly increasing");
        }
    }
}

WeightFunction WeightFunction::constant(const Rational& value) {
    return WeightFunction({Rational(0), Rational(1)}, {value});
}

Rational WeightFunction::operator()(const Rational& u) const {
    return values_[detail::piece_index(breakpoints_, u)];
}

Rational j_functional(const StepQuantile& x, const WeightFunction& f) {
    std::vector<Rational> grid;
    grid.reserve(x.breakpoints().size() + f.breakpoints().size());
    std::set_union(x.breakpoints().begin(), x.breakpoints().end(), f.breakpoints().begin(),
                   f.breakpoints().end(), std::back_inserter(grid));
    Rational total(0);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        total += (grid[j + 1] - grid[j]) * f(grid[j]) * x(grid[j]);
    }
    return total;
}

namespace {

/// Shared J_f value of the basic members, if they have one.
std::optional<Rational> common_basic_value(const BasicTuple& basic, const WeightFunction& f) {
    Rational k_value = j_functional(basic.members().front(), f);
    for (std::size_t i = 1; i < basic.size(); ++i) {
        if (j_functional(basic.members()[i], f) != k_value) {
            return std::nullopt;
        }
    }
    return k_value;
}

}  // namespace

FunctionalConstancyReport verify_functional_constancy(const Generation& gen, const WeightFunction& f) {
    FunctionalConstancyReport report;
    auto k_value = common_basic_value(gen.basic(), f);
    if (!k_value) {
        return report;  // inapplicable: basic values differ
    }
    report.applicable = true;
    report.basic_value = *k_value;
    const Rational& eps = gen.config().epsilon;
    report.expected = *k_value * eps *
                      (Rational(1) - rational_pow(eps, static_cast<unsigned>(gen.k()))) /
                      (Rational(1) - eps);
    for (const auto& [index, fn] : gen.members()) {
        Rational actual = j_functional(fn, f);
        ++report.checked;
        if (actual != *report.expected) {
            report.violations.push_back({index_to_string(index), std::move(actual)});
        }
    }
    return report;
}

FunctionalConstancyReport verify_functional_constancy(const BasicTuple& basic,
                                                       const LambdaConfig& config,
                                                       const std::vector<InfiniteIndex>& indexes,
                                                       const WeightFunction& f) {
    if (!config.strict) {
        throw ValidationError("infinite-generation checks require a strict lambda");
    }
    FunctionalConstancyReport report;
    auto k_value = common_basic_value(basic, f);
    if (!k_value) {
        return report;
    }
    report.applicable = true;
    report.basic_value = *k_value;
    report.expected = *k_value * config.epsilon / (Rational(1) - config.epsilon);
    for (const InfiniteIndex& index : indexes) {
        Rational actual = j_functional(infinite_index_function(basic, config, index), f);
        ++report.checked;
        if (actual != *report.expected) {
            report.violations.push_back(
                {index_to_string(index.prefix) + "(" + index_to_string(index.period) + ")",
                 std::move(actual)});
        }
    }
    return report;
}

}  // namespace metadice
