#ifndef HM3_EXTREMAL_HPP
#define HM3_EXTREMAL_HPP

#include "hm3/hypergraph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hm3::extremal {

/// Balanced partition (|A| = n/3, |B| = 2n/3) of a low-B-density instance,
/// with the exceptional and strongly exceptional vertex sets recomputed from
/// raw degrees on demand.  X_A collects A-vertices whose degree toward
/// C(B,2) drops below (1 - sqrt(alpha)) of full, S_A below alpha^(1/3);
/// X_B / S_B use degrees toward B x A pairs.
struct ExtremalPartition {
    Rational alpha;
    VertexSet A, B;
    VertexSet X_A, X_B, S_A, S_B;

    long long deg_pairs_B(const Hypergraph3 & H, int a) const;  // edges {a, b, b'}
    long long deg_B_cross(const Hypergraph3 & H, int b) const;  // edges {b, b', a}
    void recompute_sets(const Hypergraph3 & H);
    /// Stored sets equal a fresh recomputation (tested invariant).
    bool sets_consistent(const Hypergraph3 & H) const;

    /// Diagnostic size bounds: |X_A| <= 18 sqrt(alpha) |A|, |X_B| <= 18
    /// sqrt(alpha) |B|, |S_A| <= 40 alpha |A|, |S_B| <= 40 alpha |B|.
    /// Consequences of the density certificate at scale; reported as
    /// warnings in the stage trace, never enforced.
    struct SizeBounds {
        bool x_a = true, x_b = true, s_a = true, s_b = true;
        bool all() const { return x_a && x_b && s_a && s_b; }
    };
    SizeBounds size_bounds() const;
};

struct StageRecord {
    std::string stage;
    long long s_a = 0, s_b = 0, x_a = 0, x_b = 0;
    long long edges_committed = 0;
    long long a_rem = 0, b_rem = 0;
    std::string note; // size-bound warnings and similar diagnostics
};

void write_stage_csv(std::ostream & os, const std::vector<StageRecord> & rows,
                     bool header = true);

/// Rebalances the certificate set B0 to |B| = 2n/3 by shifting extreme-degree
/// vertices, checks d3(B) < 6 alpha, and computes the exceptional sets.
/// Size-bound diagnostics (|X_A| <= 18 sqrt(alpha) |A| and friends) are
/// reported through the optional record list, never enforced.
ExtremalPartition prepare_extremal_partition(const Hypergraph3 & H, const VertexSet & B0,
                                             const Rational & alpha,
                                             std::vector<StageRecord> * trace = nullptr);

/// Swaps strongly exceptional vertices between A and B while both sides have
/// one, leaving min(|S_A|, |S_B|) = 0.  Stops early if a swap fails to
/// shrink |S_A| + |S_B|.
ExtremalPartition exchange_reduce(const ExtremalPartition & P, const Hypergraph3 & H);

/// Covers all strongly exceptional vertices with a verified matching and
/// restores |B'| = 2|A'|.  S_B side: one edge inside B per vertex plus a
/// balancing {b, a, a'} edge each; S_A side: the inductive max-degree
/// matching in H restricted to S_A union B, with uncovered S_A vertices
/// exchanged into B.  Throws GreedyFailed when the desk-scale slack is
/// absent.
std::pair<Matching, ExtremalPartition> eliminate_strongly_exceptional(
    const ExtremalPartition & P, const Hypergraph3 & H,
    std::vector<StageRecord> * trace = nullptr);

/// Covers the remaining exceptional vertices: each a in X_A with {a, b, b'},
/// each b in X_B with {b, b', a}; every edge takes one A-vertex and two
/// B-vertices, so the 2:1 ratio is preserved.
std::pair<Matching, ExtremalPartition> eliminate_exceptional(
    const ExtremalPartition & P, const Hypergraph3 & H,
    std::vector<StageRecord> * trace = nullptr);

struct GoodPairSystem {
    std::vector<std::pair<int, int>> p1; // sampled disjoint good pairs
    std::vector<std::pair<int, int>> p2; // perfect pairing of the rest
    long long a_size = 0;                // |A''| at build time
};

/// Good pair: {b1, b2} making edges with at least (1 - 40 alpha^(1/4))|A''|
/// vertices of A''.  P1 is sampled from the seed (target
/// min(ceil(100 alpha^(1/4) |B''|), floor(|B''|/2))) and post-verified: each
/// a in A'' must reach 3/4 of P1 and each pair 3/4 of A''; one resample with
/// seed+1, then failure.  P2 pairs the remainder through the good-pair graph
/// after a Dirac-style min-degree check.
GoodPairSystem build_good_pairs(const ExtremalPartition & P, const Hypergraph3 & H,
                                std::uint64_t seed);

/// Saturating matching of the auxiliary bipartite graph (A'' vs pairs);
/// throws HallViolated with a witness set when saturation fails.
Matching hall_finish(const ExtremalPartition & P, const GoodPairSystem & GPS,
                     const Hypergraph3 & H);

/// Full pipeline: prepare, exchange, eliminate strongly exceptional and
/// exceptional vertices, good pairs, Hall finish; output verified perfect.
/// Requires delta1(H) >= threshold(n) and a valid certificate B0.
Matching extremal_perfect_matching(const Hypergraph3 & H, const VertexSet & B0,
                                   const Rational & alpha, std::uint64_t seed,
                                   std::vector<StageRecord> * trace = nullptr);

} // namespace hm3::extremal

#endif
