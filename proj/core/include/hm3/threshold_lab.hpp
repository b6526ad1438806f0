#ifndef HM3_THRESHOLD_LAB_HPP
#define HM3_THRESHOLD_LAB_HPP

#include "hm3/hypergraph.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hm3::lab {

/// The closed-form degree threshold C(n-1,2) - C(2n/3,2) + 1 for n in 3Z.
long long threshold(int n);

struct ThresholdReport {
    enum class Mode { Exhaustive, Sampled };

    int n = 0;
    long long formula_value = 0;     // threshold(n)
    long long verified_floor = -1;   // largest tau with a delta1 = tau witness without PM
    long long verified_ceiling = -1; // smallest tau with every examined delta1 >= tau graph matched
    Mode mode = Mode::Sampled;
    long long examined = 0;
    long long pm_count = 0;
    long long undecided = 0;         // sampled mode only; never counted as counterexamples
    long long tau = -1;              // sampled mode: the conditioning floor
    std::vector<Hypergraph3> counterexamples;
    long long m1_exact = -1;         // exhaustive mode: the exact m1(3,n)
    // exhaustive mode: per-delta1 graph counts and no-PM counts
    std::vector<long long> count_by_delta;
    std::vector<long long> nopm_by_delta;
    long long runtime_ms = 0;

    /// CSV rows: n, tau, mode, examined, pm_count, counterexamples, runtime_ms.
    void write_csv(std::ostream & os, bool header = true) const;
};

/// Enumerates all 2^20 3-graphs on 6 vertices with the subset-DP matching
/// recurrence on raw 20-bit edge masks (no isomorphism reduction), computes
/// the exact m1(3,6), and checks m1(3,6) >= 5 against the tight construction.
/// Whether m1(3,6) equals threshold(6) is reported, not assumed.
ThresholdReport exhaustive_verify_n6(int workers = 1);

/// Draws `samples` instances from random_min_degree(n, tau, seed + i) and
/// decides each with the exact solver.  Counterexamples are carried in the
/// report for persistence and re-verification; Undecided verdicts are
/// tallied separately.
ThresholdReport sampled_verify(int n, long long tau, int samples, std::uint64_t seed,
                               int workers = 1);

} // namespace hm3::lab

#endif
