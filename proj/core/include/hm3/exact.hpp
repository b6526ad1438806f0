#ifndef HM3_EXACT_HPP
#define HM3_EXACT_HPP

#include "hm3/hypergraph.hpp"

#include <cstdint>
#include <optional>

namespace hm3::exact {

struct DpResult {
    int size = 0;
    Matching witness;
};

/// Exact maximum matching by DP over vertex subsets: f(mask) branches on the
/// lowest uncovered vertex (skipped, or matched into each incident edge
/// within mask).  Deterministic; requires n <= 24.
DpResult max_matching_dp(const Hypergraph3 & H);

struct BranchResult {
    int size = 0;
    Matching witness;
    bool exact = false;     // true iff the search completed within budget
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultBranchBudget = 20'000'000;

/// Branch and bound on the lowest-degree uncovered vertex (fail-first).
/// Upper bounds: floor(|alive|/3) and a greedy hitting-set bound, which
/// certifies optimality on A-side-limited instances without search.
/// Budget exhaustion degrades to a lower bound with exact = false.
BranchResult max_matching_branch(const Hypergraph3 & H,
                                 std::uint64_t budget = kDefaultBranchBudget);

enum class PmStatus { Yes, No, Undecided };

struct PmVerdict {
    PmStatus status = PmStatus::Undecided;
    std::optional<Matching> witness; // verified when status == Yes
    std::string note;
};

/// Decides the perfect-matching predicate: DP for n <= 24, branch solver
/// (exactness required) above.  Undecided is a distinct verdict, never
/// conflated with a verified "no".
PmVerdict has_perfect_matching(const Hypergraph3 & H,
                               std::uint64_t budget = kDefaultBranchBudget);

} // namespace hm3::exact

#endif
