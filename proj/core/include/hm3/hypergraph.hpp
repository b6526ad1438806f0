#ifndef HM3_HYPERGRAPH_HPP
#define HM3_HYPERGRAPH_HPP

#include "hm3/bitset.hpp"
#include "hm3/error.hpp"
#include "hm3/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace hm3 {

using VertexSet = Bitset;
using Triple = std::array<int, 3>;

inline long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }
inline long long binom3(long long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// Colexicographic rank of a triple a < b < c: C(c,3) + C(b,2) + C(a,1).
/// Bijection onto {0, ..., C(n,3)-1}; throws InvalidTriple unless a < b < c.
long long triple_rank(int a, int b, int c);
/// Inverse of triple_rank.
Triple triple_unrank(long long rank);

/// Immutable 3-uniform hypergraph on vertices {0, ..., n-1}.  Edge
/// membership is a bitset over all C(n,3) triples indexed by colex rank.
/// Mutation produces a new value; instances are safe to share across threads.
class Hypergraph3 {
  public:
    static Hypergraph3 empty(int n);
    static Hypergraph3 complete(int n);
    static Hypergraph3 from_edge_bits(int n, Bitset edges);
    static Hypergraph3 from_triples(int n, const std::vector<Triple> & triples);

    int n() const { return n_; }
    long long m() const { return m_; }
    const Bitset & edge_bits() const { return edges_; }

    bool has_edge_rank(long long rank) const { return edges_.test((std::size_t)rank); }
    /// Accepts vertices in any order (they are sorted before ranking).
    bool has_edge(int u, int v, int w) const;

    Hypergraph3 with_toggled(long long rank) const;
    Hypergraph3 with_edge(int u, int v, int w) const;
    Hypergraph3 without_edge(int u, int v, int w) const;

    std::vector<Triple> edges() const;
    template <typename Fn> void for_each_edge(Fn && fn) const {
        edges_.for_each([&](std::size_t r) { fn(triple_unrank((long long)r)); });
    }

    VertexSet all_vertices() const { return Bitset::full((std::size_t)n_); }

  private:
    Hypergraph3(int n, Bitset edges, long long m) : n_(n), edges_(std::move(edges)), m_(m) {}

    int n_ = 0;
    Bitset edges_;
    long long m_ = 0;
};

/// A set of pairwise-disjoint edges plus the vertex set they cover.
struct Matching {
    std::vector<Triple> edges;
    VertexSet covered;

    static Matching empty(int n) { return Matching{{}, Bitset((std::size_t)n)}; }
    int size() const { return (int)edges.size(); }
    void add(const Triple & t) {
        edges.push_back(t);
        for (int v : t) covered.set((std::size_t)v);
    }
};

struct DegreeProfile {
    std::vector<long long> deg; // deg3(v) per vertex
    long long delta1 = 0;       // minimum over all vertices
};

DegreeProfile degree_profile(const Hypergraph3 & H);

/// d3(U) = |E(H|_U)| / C(|U|,3), exact.  Throws SubsetTooSmall for |U| < 3.
Rational subset_density(const Hypergraph3 & H, const VertexSet & U);

/// Number of edges with one vertex in A and two in B (A, B disjoint).
long long cross_edges_pairs(const Hypergraph3 & H, const VertexSet & A, const VertexSet & B);
/// d3(A, C(B,2)); requires A, B disjoint, |A| >= 1, |B| >= 2.
Rational cross_density_pairs(const Hypergraph3 & H, const VertexSet & A, const VertexSet & B);

/// Number of transversal edges (one vertex in each of A1, A2, A3).
long long cross_edges_product(const Hypergraph3 & H, const VertexSet & A1,
                              const VertexSet & A2, const VertexSet & A3);
/// d3(A1, A2 x A3); requires pairwise disjoint, all nonempty.
Rational cross_density_product(const Hypergraph3 & H, const VertexSet & A1,
                               const VertexSet & A2, const VertexSet & A3);

/// Edge split by intersection size with S: e1 = edges with |e cap S| = 1,
/// e2 with 2, e3 with 3.  The identity sum_{v in S} deg(v) = e1 + 2 e2 + 3 e3
/// is checked before returning.
struct DegreeAccounting {
    long long e1 = 0, e2 = 0, e3 = 0;
};
DegreeAccounting degree_accounting(const Hypergraph3 & H, const VertexSet & S);

struct MatchingVerdict {
    bool ok = true;
    std::string reason; // names the violated clause on rejection
};

/// Accepts iff all triples are edges, pairwise disjoint, and (if perfect)
/// 3|M| = n.  Rejections name the violated clause.
MatchingVerdict verify_matching(const Hypergraph3 & H, const Matching & M, bool perfect);

namespace detail {
/// deg3 of the pair {u, v}: edges containing both.  Internal helper only;
/// the d = 2 degree is never part of the public surface.
long long pair_degree(const Hypergraph3 & H, int u, int v);
} // namespace detail

} // namespace hm3

#endif
