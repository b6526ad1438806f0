#ifndef HM3_COVER_HPP
#define HM3_COVER_HPP

#include "hm3/graphs.hpp"
#include "hm3/hypergraph.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hm3::cover {

/// One complete balanced 3-partite subgraph: three disjoint classes of equal
/// size t, every transversal triple an edge of the host.
struct Tripartite {
    std::array<std::vector<int>, 3> classes; // each sorted ascending

    int t() const { return (int)classes[0].size(); }
    VertexSet vertices(int n) const;
    bool complete_in(const Hypergraph3 & H) const;
};

/// A family of disjoint tripartite members with a common class size, plus
/// the leftover set within the working region.
struct TripartiteCover {
    int t = 1;
    VertexSet region;   // the universe this cover lives in
    std::vector<Tripartite> members;

    VertexSet covered(int n) const;
    VertexSet leftover(int n) const { return region.minus(covered(n)); }
    long long covered_count() const { return 3LL * t * (long long)members.size(); }

    /// Disjointness, uniform class size, completeness of every member,
    /// members inside the region.  Throws Internal on violation.
    void verify(const Hypergraph3 & H) const;

    /// Every member split into chunks of class size new_t (any transversal
    /// sub-block of a complete tripartite graph is complete); remainder
    /// vertices fall back into the leftover.
    TripartiteCover resplit(int new_t) const;

    /// One edge per transversal position of each member.
    Matching flatten(const Hypergraph3 & H) const;
};

/// 3x3 bipartite link graph between the classes of two members: bit (p,q)
/// records whether the leftover is densely joined to the class pair.
struct LinkGraph {
    std::uint16_t bits = 0;

    bool edge(int p, int q) const { return (bits >> (3 * p + q)) & 1; }
    void set_edge(int p, int q) { bits = (std::uint16_t)(bits | (1u << (3 * p + q))); }
    int edge_count() const;
};

/// The two special 5-edge patterns of the link trichotomy, as edge masks
/// of a LinkGraph (left degree sequences (3,2,0) and (3,1,1)).
LinkGraph pattern_b320();
LinkGraph pattern_b311();

struct LinkClass {
    enum class Kind { HasPM, ContainsB320, IsoB311, Sparse, Other };
    Kind kind = Kind::Other;
    // HasPM: right_perm[p] = q means classes (p, q) are matched.
    std::array<int, 3> right_perm{0, 1, 2};
    // ContainsB320 / IsoB311: role_left[k] = class acting as the k-th left
    // vertex of the pattern, role_right likewise; `transposed` marks that
    // the pattern matched with the two members' sides swapped.
    std::array<int, 3> role_left{0, 1, 2};
    std::array<int, 3> role_right{0, 1, 2};
    bool transposed = false;
};

/// Classification priority: perfect matching, then B320 containment (both
/// side orientations), then B311 isomorphism; graphs with <= 4 edges report
/// Sparse; Other never occurs for >= 5 edges (checked exhaustively in the
/// test suite).
LinkClass classify_link(const LinkGraph & L);

struct EngineParams {
    Rational eta{1, 20};
    Rational alpha{3, 10};
    int t = 1;
    std::uint64_t seed = 0;
    int max_iterations = 64;
    int min_gain = 1;        // vertices a move must add to be accepted
    int absorber_cap = 0;    // 0 = max(1, ceil(eta^3 n))
    int probe_count = 64;    // random 3-sets scored when picking absorbers
};

/// Single edge in a region, or a complete balanced K(3)(t): deterministic
/// seed-edge scan with greedy class extension.
std::optional<Tripartite> find_k3t(const Hypergraph3 & H, const VertexSet & region, int t);

/// Greedy maximal family of disjoint K(3)(t)'s inside `allowed`; for t = 1
/// this is exactly a greedy maximal matching in colex edge order.
TripartiteCover greedy_tripartite_cover(const Hypergraph3 & H, const VertexSet & allowed,
                                        int t, const Rational & eta);

/// Balanced complete tripartite with classes X' in X, Y' in Y, Z' in Z,
/// extracted through the auxiliary-bipartite + pigeonhole pipeline.
/// Requires d3(Z, X x Y) >= eta (else DensityTooLow).  `want` forces the
/// class size; 0 picks max(1, floor(eta/4 log2 |X|)) and degrades to the
/// best achievable size >= 1.
std::optional<Tripartite> tripartite_from_product(const Hypergraph3 & H, const VertexSet & X,
                                                  const VertexSet & Y, const VertexSet & Z,
                                                  const Rational & eta, int want = 0);

/// Balanced complete tripartite (A', B', B'') with A' in A and disjoint
/// B', B'' in B, through the pair-graph pipeline; requires
/// d3(A, C(B,2)) >= eta.  Target class size max(1, floor(eta |A| / 2)).
std::optional<Tripartite> tripartite_from_pairs(const Hypergraph3 & H, const VertexSet & A,
                                                const VertexSet & B, const Rational & eta,
                                                int want = 0);

/// Number of classes of T densely joined to pairs of the leftover
/// (d3(V_l, C(I,2)) >= 2 eta); 0 when |I| < 2.
int k_sidedness(const Tripartite & T, const VertexSet & leftover, const Hypergraph3 & H,
                const Rational & eta);

LinkGraph link_graph_of_pair(const Tripartite & Ti, const Tripartite & Tj,
                             const VertexSet & leftover, const Hypergraph3 & H,
                             const Rational & eta);

/// Claim-style cover moves: each returns a strictly larger uniform valid
/// cover (net gain >= min_gain) or nothing.
std::optional<TripartiteCover> improve_two_sided(const TripartiteCover & cover,
                                                 const Hypergraph3 & H,
                                                 const EngineParams & params);

std::optional<TripartiteCover> improve_by_links(const TripartiteCover & cover,
                                                const Hypergraph3 & H,
                                                const EngineParams & params);

struct ExtremalOrImproved {
    std::optional<TripartiteCover> improved;
    std::optional<VertexSet> extremal_set; // verified Definition-style certificate
};

/// Third move: either grows the cover through the sparse-link structure, or
/// emits a low-density certificate set B with |B| >= (2/3 - alpha) n_region
/// and d3(B) < alpha (re-verified), or neither.
ExtremalOrImproved improve_or_report_extremal(const TripartiteCover & cover,
                                              const Hypergraph3 & H,
                                              const EngineParams & params);

struct AbsorbingMatching {
    Matching M;
    // probe 3-sets sampled during construction and the index of the edge of
    // M that absorbs each (or -1)
    std::vector<Triple> probes;
    std::vector<int> absorber_index;
};

/// True iff the 6 vertices of e plus the 3-set W split into two disjoint
/// edges of H covering all of them (e and W must be disjoint).
bool edge_absorbs(const Hypergraph3 & H, const Triple & e, const Triple & W);

/// Greedy absorber selection: disjoint edges preferred by how many seeded
/// probe 3-sets they absorb, capped at max(1, ceil(eta^3 n)) unless
/// params.absorber_cap overrides.  Throws EmptyGraph when H has no edge.
AbsorbingMatching build_absorbing_matching(const Hypergraph3 & H, const EngineParams & params);

/// Re-matches W (|W| in 3Z, disjoint from partial and from V(M)) into the
/// absorber: W is partitioned into 3-sets, each assigned a distinct
/// compatible absorber edge by bipartite matching, and every used edge is
/// replaced by its two covering edges.  Throws AbsorptionFailed when no
/// assignment exists for the given partition.
Matching absorb_leftover(const Hypergraph3 & H, const AbsorbingMatching & AM,
                         const VertexSet & W, const Matching & partial);

struct IterationRecord {
    int iter = 0;
    long long cover_vertices = 0;
    int t = 1;
    long long leftover = 0;
    std::string move; // claim1 | claim2 | claim3 | none
    long long gain = 0;
};

struct CoverOutcome {
    enum class Kind { AlmostPerfect, Extremal, Stalled };
    Kind kind = Kind::Stalled;
    Matching matching;       // flattened cover (valid in every outcome)
    VertexSet uncovered;     // region minus covered
    std::optional<VertexSet> extremal_set;
    std::vector<IterationRecord> trace;
    std::string stall_note;
};

using CoverObserver = std::function<void(const TripartiteCover &, const IterationRecord &)>;

/// The cover-iteration driver: greedy cover, then the three moves in order
/// until the leftover drops below eta^2 |region|, an extremal certificate
/// appears, or no move applies.  Stalled is a first-class outcome carrying
/// the flattened matching and diagnostics.
CoverOutcome almost_perfect_matching(const Hypergraph3 & H, const EngineParams & params,
                                     std::optional<VertexSet> region = std::nullopt,
                                     const CoverObserver & observer = nullptr);

void write_trace_csv(std::ostream & os, const std::vector<IterationRecord> & rows,
                     bool header = true);

} // namespace hm3::cover

#endif
