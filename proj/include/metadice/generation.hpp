#pragma once

/**
 * @file generation.hpp
 * @brief Generations of quantile functions built from a basic tuple by
 *        contracted summation, the index tree, and the brute-force
 *        verifiers for their pairwise-relation and linear-functional
 *        invariants.
 */

#include "metadice/errors.hpp"
#include "metadice/preference.hpp"
#include "metadice/quantile.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace metadice {

/// Digit word in {1..m}^k; the empty word is the root index.
using Index = std::vector<int>;

std::string index_to_string(const Index& index);

/// m >= 3 step quantile functions with pairwise disjoint value ranges
/// (separation r > 0, diameter R) forming an intransitive cycle in the
/// stored order. Construct through validate_basic.
class BasicTuple {
public:
    const std::vector<StepQuantile>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    /// Member for a 1-based digit.
    const StepQuantile& member(int digit) const;
    const Rational& r() const { return r_; }
    const Rational& R() const { return R_; }
    const CycleReport& cycle() const { return cycle_; }

private:
    friend BasicTuple validate_basic(std::vector<StepQuantile> tuple);
    BasicTuple(std::vector<StepQuantile> members, Rational r, Rational R, CycleReport cycle)
        : members_(std::move(members)), r_(std::move(r)), R_(std::move(R)), cycle_(std::move(cycle)) {}

    std::vector<StepQuantile> members_;
    Rational r_;
    Rational R_;
    CycleReport cycle_;
};

/// Checks separation and the intransitive cycle; throws ValidationError
/// naming the defect (value collision, or the first failing edge).
BasicTuple validate_basic(std::vector<StepQuantile> tuple);

/// Contraction ratio epsilon = 1/lambda. Non-strict admissibility is
/// lambda >= 1 + R/r; the strict form (required for infinite indexes)
/// is lambda > 1 + R/r.
struct LambdaConfig {
    Rational lambda;
    Rational epsilon;
    bool strict;
};

/// Smallest admissible configuration: lambda = 1 + R/r when non-strict,
/// the smallest integer exceeding 1 + R/r when strict.
LambdaConfig minimal_lambda(const BasicTuple& basic, bool strict);

/// User-chosen lambda; throws ValidationError if inadmissible for the tuple.
LambdaConfig make_lambda_config(const BasicTuple& basic, Rational lambda, bool strict);

/// Eventually periodic infinite digit word: prefix then period repeated
/// forever. The same word has many (prefix, period) presentations.
struct InfiniteIndex {
    Index prefix;
    Index period;  // nonempty

    /// 1-based digit lookup.
    int digit_at(std::size_t position) const;
};

/// Word equality (presentation-independent).
bool same_word(const InfiniteIndex& a, const InfiniteIndex& b);

/// 1-based position of the first differing digit; throws
/// std::invalid_argument on identical words. A finite word that is a
/// proper prefix of the other diverges just past its end.
std::size_t first_divergence(const Index& a, const Index& b);
std::size_t first_divergence(const InfiniteIndex& a, const InfiniteIndex& b);

/// The set of the m^k quantile functions of one generation, keyed by
/// index in lexicographic order. Immutable once built.
class Generation {
public:
    Generation(BasicTuple basic, LambdaConfig config, int k,
               std::map<Index, StepQuantile> members)
        : basic_(std::move(basic)), config_(std::move(config)), k_(k), members_(std::move(members)) {}

    const BasicTuple& basic() const { return basic_; }
    const LambdaConfig& config() const { return config_; }
    int k() const { return k_; }
    const std::map<Index, StepQuantile>& members() const { return members_; }

    /// Members whose index starts with the given prefix, in index order.
    std::vector<const StepQuantile*> group(const Index& prefix) const;

private:
    BasicTuple basic_;
    LambdaConfig config_;
    int k_;
    std::map<Index, StepQuantile> members_;
};

inline constexpr std::uint64_t kDefaultMemberCap = 1'000'000;
inline constexpr std::uint64_t kDefaultPairCap = 10'000'000;

/// Runs the recursive construction: generation 0 is the single zero
/// function; each member of generation j-1 spawns m children by adding
/// epsilon^j times a basic member. Throws when the config is inadmissible
/// or m^k exceeds member_cap.
Generation build_generation(const BasicTuple& basic, const LambdaConfig& config, int k,
                            std::uint64_t member_cap = kDefaultMemberCap);

/// Closed form: sum over l of epsilon^l times the basic member named by
/// the l-th digit. Agrees with the recursive builder.
StepQuantile function_for_index(const BasicTuple& basic, const LambdaConfig& config,
                                const Index& index);

/// Exact limit function of an infinite index: the finite prefix sum plus
/// the periodic tail summed as a geometric series. Requires a strict
/// config.
StepQuantile infinite_index_function(const BasicTuple& basic, const LambdaConfig& config,
                                     const InfiniteIndex& index);

/// Pairwise check that the preference value of any two members equals the
/// preference value of the basic pair at the first-divergence position.
///
/// Exact value equality can fail for pairs whose shared index prefix maps
/// to a nonconstant function (the members then agree on a coupled prefix
/// that independent sampling breaks); `violations` lists every such pair.
/// `sign_violations` counts the subset where even the sign differs, i.e.
/// the precedence relation itself is not the basic pair's relation.
struct PairwiseRelationReport {
    std::uint64_t pairs_checked = 0;
    bool sampled = false;  ///< true when a random sample replaced exhaustion
    std::uint64_t sign_violations = 0;
    struct Violation {
        Index first;
        Index second;
        Rational expected;
        Rational actual;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive over all unordered member pairs while the count stays within
/// pair_cap; beyond that a seeded random sample of pair_cap pairs is
/// checked and the report says so. Requires k >= 1.
PairwiseRelationReport verify_divergence_relations(const Generation& gen,
                                                   std::uint64_t pair_cap = kDefaultPairCap,
                                                   std::uint64_t sample_seed = 0x6d657461);

struct BijectionReport {
    std::size_t member_count = 0;
    struct Violation {
        Index first;
        Index second;  // distinct indexes mapping to equal functions
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// All m^k member functions pairwise distinct as canonical step functions.
BijectionReport verify_bijection(const Generation& gen);

struct MetaIntransitivityReport {
    int order = 0;                       ///< nesting order verified, k - 1
    int group_levels_checked = 0;        ///< sibling-group levels (1..k-1)
    std::size_t tuples_checked = 0;      ///< sibling families incl. leaf tuples
    std::uint64_t comparisons = 0;       ///< individual precedence checks
    struct Violation {
        Index prefix;    ///< common prefix of the failing family
        int from_digit;  ///< failing edge: group/member from_digit -> to_digit
        int to_digit;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks, for every nesting level and common prefix, that the m sibling
/// groups form a set-level intransitive cycle in the basic order (every
/// cross pair satisfies precedence), and that the m leaf functions inside
/// each deepest group form an intransitive cycle themselves. k >= 2.
MetaIntransitivityReport verify_meta_intransitivity(const Generation& gen);

struct InfinitePairwiseReport {
    std::uint64_t pairs_checked = 0;
    struct Violation {
        std::size_t first;   ///< positions into the supplied index list
        std::size_t second;
        Rational expected;
        Rational actual;
    };
    std::vector<Violation> violations;
    /// Group-level relations of the infinite generation are attested
    /// through these representative members, not through whole subsets.
    std::string note;
    bool ok() const { return violations.empty(); }
};

/// Same check on representable infinite-index functions: the preference
/// value of every pair is compared against the basic pair at the first
/// divergence. Requires a strict config and pairwise distinct words.
InfinitePairwiseReport verify_divergence_relations(const BasicTuple& basic,
                                                   const LambdaConfig& config,
                                                   const std::vector<InfiniteIndex>& indexes);

/// Piecewise-constant weight on [0,1]; no monotonicity requirement.
class WeightFunction {
public:
    WeightFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);
    static WeightFunction constant(const Rational& value);

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& values() const { return values_; }
    Rational operator()(const Rational& u) const;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
};

/// Exact integral of f(u) x(u) du over the common refinement of the two
/// step grids. f == 1 gives the mean.
Rational j_functional(const StepQuantile& x, const WeightFunction& f);

struct FunctionalConstancyReport {
    bool applicable = false;         ///< basic members share a common J_f value
    std::optional<Rational> basic_value;  ///< the shared value K when applicable
    std::optional<Rational> expected;     ///< the predicted common member value
    std::size_t checked = 0;
    struct Violation {
        std::string member;  ///< index (digit string or word presentation)
        Rational actual;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// When all basic members share J_f = K, every member of generation k has
/// J_f = K eps (1 - eps^k)/(1 - eps); verified by direct evaluation of
/// each member. Reports inapplicable when the basic values differ.
FunctionalConstancyReport verify_functional_constancy(const Generation& gen, const WeightFunction& f);

/// Infinite-index counterpart: every representable infinite-index function
/// has J_f = K eps/(1 - eps). Requires a strict config.
FunctionalConstancyReport verify_functional_constancy(const BasicTuple& basic,
                                                      const LambdaConfig& config,
                                                      const std::vector<InfiniteIndex>& indexes,
                                                      const WeightFunction& f);

}  // namespace metadice
