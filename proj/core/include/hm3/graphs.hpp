#ifndef HM3_GRAPHS_HPP
#define HM3_GRAPHS_HPP

#include "hm3/bitset.hpp"
#include "hm3/error.hpp"
#include "hm3/rational.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace hm3::gr {

/// Plain 2-uniform graph with adjacency bitset rows.
struct Graph {
    int n = 0;
    long long m = 0;
    std::vector<Bitset> adj;

    static Graph empty(int n) {
        Graph g;
        g.n = n;
        g.adj.assign((std::size_t)n, Bitset((std::size_t)n));
        return g;
    }
    void add_edge(int u, int v) {
        if (u == v || adj[(std::size_t)u].test((std::size_t)v)) return;
        adj[(std::size_t)u].set((std::size_t)v);
        adj[(std::size_t)v].set((std::size_t)u);
        ++m;
    }
    bool has_edge(int u, int v) const { return adj[(std::size_t)u].test((std::size_t)v); }
    int degree(int v) const { return (int)adj[(std::size_t)v].count(); }
    int min_degree() const {
        int d = n == 0 ? 0 : degree(0);
        for (int v = 1; v < n; ++v) d = std::min(d, degree(v));
        return d;
    }
};

struct BipartiteGraph {
    int nl = 0, nr = 0;
    long long m = 0;
    std::vector<Bitset> row; // per left vertex: adjacent right vertices

    static BipartiteGraph empty(int nl, int nr) {
        BipartiteGraph g;
        g.nl = nl;
        g.nr = nr;
        g.row.assign((std::size_t)nl, Bitset((std::size_t)nr));
        return g;
    }
    void add_edge(int l, int r) {
        if (row[(std::size_t)l].test((std::size_t)r)) return;
        row[(std::size_t)l].set((std::size_t)r);
        ++m;
    }
    bool has_edge(int l, int r) const { return row[(std::size_t)l].test((std::size_t)r); }
    /// Neighborhood of a right vertex inside the left side.
    Bitset column(int r) const {
        Bitset c((std::size_t)nl);
        for (int l = 0; l < nl; ++l)
            if (row[(std::size_t)l].test((std::size_t)r)) c.set((std::size_t)l);
        return c;
    }
    int right_degree(int r) const { return (int)column(r).count(); }
};

struct CompleteBipartite {
    std::vector<int> left;
    std::vector<int> right;
};

/// Dense-bipartite pigeonhole extraction: keep the right vertices of degree
/// >= eta|L|/2, bucket them by their exact neighborhood in L, and return the
/// largest bucket together with its common neighborhood.  Under the density
/// precondition the output satisfies |left| >= ceil(eta|L|/2) and
/// |right| >= ceil((eta/2) |R| / 2^|L|).  Throws DensityTooLow when
/// d(L,R) < eta.
CompleteBipartite pigeonhole_complete_bipartite(const BipartiteGraph & G, const Rational & eta);

/// Nonempty induced subgraph of minimum degree >= m/n (m, n of the input
/// graph), by repeated deletion of low-degree vertices.  For m = 0 the
/// single lowest-index vertex is returned.
Bitset min_degree_subgraph(const Graph & G);

/// Matching of size >= min{delta(G), floor(n/2)} via greedy augmentation
/// (direct edges between unmatched vertices, then length-3 exchanges).
std::vector<std::pair<int, int>> greedy_graph_matching(const Graph & G);

/// Complete bipartite K_{s,s} inside a bipartite graph, by exhaustive
/// enumeration of s-subsets of the left side (desk-scale sizes only).
std::optional<CompleteBipartite> find_biclique_bipartite(const BipartiteGraph & G, int s);

/// Complete bipartite K_{s,s} with disjoint sides inside a general graph.
std::optional<CompleteBipartite> find_biclique_general(const Graph & G, int s);

/// Maximum bipartite matching (augmenting paths).  Returns, per right
/// vertex, the matched left vertex or -1.
std::vector<int> max_bipartite_matching(const BipartiteGraph & G);

} // namespace hm3::gr

#endif
