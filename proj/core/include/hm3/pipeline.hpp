#ifndef HM3_PIPELINE_HPP
#define HM3_PIPELINE_HPP

#include "hm3/cover.hpp"
#include "hm3/exact.hpp"
#include "hm3/extremal.hpp"

#include <optional>
#include <string>

namespace hm3::pipeline {

struct PipelineConfig {
    Rational alpha{3, 10};
    // eta defaults to alpha^(3/2); the absorbing stage runs at sqrt(alpha).
    // Both roots are irrational for the default alpha, so they enter as
    // denominator-10^6 rational approximations (parameter derivation only;
    // every threshold test on them stays exact).
    std::optional<Rational> eta;
    std::uint64_t seed = 0;
    int t = 1;
    enum class Fallback { Auto, On, Off };
    Fallback fallback = Fallback::Auto; // Auto: on for n <= 24
    std::uint64_t branch_budget = exact::kDefaultBranchBudget;
    int max_iterations = 64;

    Rational effective_eta() const { return eta ? *eta : alpha * approx_root(alpha, 2); }
    Rational absorb_eta() const { return approx_root(alpha, 2); }
    bool fallback_enabled(int n) const {
        return fallback == Fallback::On || (fallback == Fallback::Auto && n <= 24);
    }
};

struct PipelineResult {
    enum class Status {
        Found,            // verified perfect matching
        NoPerfect,        // exact fallback verified there is none
        Undecided,        // staged failure, exact fallback off or inconclusive
    };
    Status status = Status::Undecided;
    std::optional<Matching> matching;
    std::string failed_stage;  // empty when the heuristic path succeeded
    std::string detail;
    bool used_exact_fallback = false;
    std::vector<cover::IterationRecord> cover_trace;
    std::vector<extremal::StageRecord> stage_trace;
};

/// Top-level driver: absorbing matching (parameter sqrt(alpha)), cover
/// iteration on the remainder (parameter alpha^(3/2)), leftover absorption;
/// the extremal outcome reroutes through the extremal matcher on the whole
/// instance.  Any staged failure consults the exact solver when the
/// fallback is enabled.  Every returned matching is verified.
PipelineResult perfect_matching(const Hypergraph3 & H, const PipelineConfig & cfg);

} // namespace hm3::pipeline

#endif
