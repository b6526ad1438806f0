#include "hm3/hypergraph.hpp"

#include <algorithm>

namespace hm3 {

long long triple_rank(int a, int b, int c) {
    if (!(0 <= a && a < b && b < c))
        throw Error(Err::InvalidTriple, "triple must be strictly increasing",
                    {a, b, c});
    return binom3(c) + binom2(b) + a;
}

Triple triple_unrank(long long rank) {
    int c = 2;
    while (binom3(c + 1) <= rank) ++c;
    rank -= binom3(c);
    int b = 1;
    while (binom2(b + 1) <= rank) ++b;
    rank -= binom2(b);
    return Triple{(int)rank, b, c};
}

Hypergraph3 Hypergraph3::empty(int n) {
    if (n < 3) throw Error(Err::InvalidOrder, "need n >= 3", {n});
    return Hypergraph3(n, Bitset((std::size_t)binom3(n)), 0);
}

Hypergraph3 Hypergraph3::complete(int n) {
    if (n < 3) throw Error(Err::InvalidOrder, "need n >= 3", {n});
    return Hypergraph3(n, Bitset::full((std::size_t)binom3(n)), binom3(n));
}

Hypergraph3 Hypergraph3::from_edge_bits(int n, Bitset edges) {
    if (n < 3) throw Error(Err::InvalidOrder, "need n >= 3", {n});
    if (edges.universe() != (std::size_t)binom3(n))
        throw Error(Err::InvalidArgument, "edge bitset has wrong universe size");
    long long m = (long long)edges.count();
    return Hypergraph3(n, std::move(edges), m);
}

Hypergraph3 Hypergraph3::from_triples(int n, const std::vector<Triple> & triples) {
    Bitset bits((std::size_t)binom3(n));
    for (auto t : triples) {
        std::sort(t.begin(), t.end());
        if (t[2] >= n) throw Error(Err::InvalidArgument, "vertex out of range", {t[2], n});
        bits.set((std::size_t)triple_rank(t[0], t[1], t[2]));
    }
    return from_edge_bits(n, std::move(bits));
}

bool Hypergraph3::has_edge(int u, int v, int w) const {
    int a = u, b = v, c = w;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return edges_.test((std::size_t)triple_rank(a, b, c));
}

Hypergraph3 Hypergraph3::with_toggled(long long rank) const {
    Bitset bits = edges_;
    bits.flip((std::size_t)rank);
    return from_edge_bits(n_, std::move(bits));
}

Hypergraph3 Hypergraph3::with_edge(int u, int v, int w) const {
    int t[3] = {u, v, w};
    std::sort(t, t + 3);
    Bitset bits = edges_;
    bits.set((std::size_t)triple_rank(t[0], t[1], t[2]));
    return from_edge_bits(n_, std::move(bits));
}

Hypergraph3 Hypergraph3::without_edge(int u, int v, int w) const {
    int t[3] = {u, v, w};
    std::sort(t, t + 3);
    Bitset bits = edges_;
    bits.reset((std::size_t)triple_rank(t[0], t[1], t[2]));
    return from_edge_bits(n_, std::move(bits));
}

std::vector<Triple> Hypergraph3::edges() const {
    std::vector<Triple> out;
    out.reserve((std::size_t)m_);
    for_each_edge([&](const Triple & t) { out.push_back(t); });
    return out;
}

DegreeProfile degree_profile(const Hypergraph3 & H) {
    DegreeProfile p;
    p.deg.assign((std::size_t)H.n(), 0);
    H.for_each_edge([&](const Triple & t) {
        for (int v : t) ++p.deg[(std::size_t)v];
    });
    p.delta1 = p.deg.empty() ? 0 : *std::min_element(p.deg.begin(), p.deg.end());
    return p;
}

Rational subset_density(const Hypergraph3 & H, const VertexSet & U) {
    auto verts = U.to_vector();
    long long k = (long long)verts.size();
    if (k < 3) throw Error(Err::SubsetTooSmall, "subset density needs |U| >= 3", {k});
    long long hits = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            for (std::size_t l = j + 1; l < verts.size(); ++l)
                if (H.has_edge(verts[i], verts[j], verts[l])) ++hits;
    return Rational(hits, binom3(k));
}

long long cross_edges_pairs(const Hypergraph3 & H, const VertexSet & A, const VertexSet & B) {
    if (A.intersects(B)) throw Error(Err::SetsNotDisjoint, "A and B overlap");
    auto as = A.to_vector();
    auto bs = B.to_vector();
    long long hits = 0;
    for (int a : as)
        for (std::size_t i = 0; i < bs.size(); ++i)
            for (std::size_t j = i + 1; j < bs.size(); ++j)
                if (H.has_edge(a, bs[i], bs[j])) ++hits;
    return hits;
}

Rational cross_density_pairs(const Hypergraph3 & H, const VertexSet & A, const VertexSet & B) {
    long long na = (long long)A.count(), nb = (long long)B.count();
    if (na < 1 || nb < 2)
        throw Error(Err::InvalidArgument, "cross_density_pairs needs |A| >= 1, |B| >= 2", {na, nb});
    return Rational(cross_edges_pairs(H, A, B), na * binom2(nb));
}

long long cross_edges_product(const Hypergraph3 & H, const VertexSet & A1,
                              const VertexSet & A2, const VertexSet & A3) {
    if (A1.intersects(A2) || A1.intersects(A3) || A2.intersects(A3))
        throw Error(Err::SetsNotDisjoint, "sets overlap");
    auto v1 = A1.to_vector();
    auto v2 = A2.to_vector();
    auto v3 = A3.to_vector();
    long long hits = 0;
    for (int a : v1)
        for (int b : v2)
            for (int c : v3)
                if (H.has_edge(a, b, c)) ++hits;
    return hits;
}

Rational cross_density_product(const Hypergraph3 & H, const VertexSet & A1,
                               const VertexSet & A2, const VertexSet & A3) {
    long long n1 = (long long)A1.count(), n2 = (long long)A2.count(), n3 = (long long)A3.count();
    if (n1 < 1 || n2 < 1 || n3 < 1)
        throw Error(Err::InvalidArgument, "cross_density_product needs nonempty sets");
    return Rational(cross_edges_product(H, A1, A2, A3), n1 * n2 * n3);
}

DegreeAccounting degree_accounting(const Hypergraph3 & H, const VertexSet & S) {
    DegreeAccounting acc;
    H.for_each_edge([&](const Triple & t) {
        int k = 0;
        for (int v : t) k += S.test((std::size_t)v) ? 1 : 0;
        if (k == 1) ++acc.e1;
        else if (k == 2) ++acc.e2;
        else if (k == 3) ++acc.e3;
    });
    long long degsum = 0;
    auto prof = degree_profile(H);
    S.for_each([&](std::size_t v) { degsum += prof.deg[v]; });
    if (degsum != acc.e1 + 2 * acc.e2 + 3 * acc.e3)
        throw Error(Err::Internal, "degree accounting identity failed");
    return acc;
}

MatchingVerdict verify_matching(const Hypergraph3 & H, const Matching & M, bool perfect) {
    Bitset seen((std::size_t)H.n());
    for (const auto & t : M.edges) {
        int a = t[0], b = t[1], c = t[2];
        if (a == b || a == c || b == c || a < 0 || b < 0 || c < 0 ||
            a >= H.n() || b >= H.n() || c >= H.n())
            return {false, "non-edge: malformed triple"};
        if (!H.has_edge(a, b, c))
            return {false, "non-edge: {" + std::to_string(a) + "," + std::to_string(b) +
                               "," + std::to_string(c) + "} is not an edge"};
        for (int v : t) {
            if (seen.test((std::size_t)v))
                return {false, "overlap: vertex " + std::to_string(v) + " covered twice"};
            seen.set((std::size_t)v);
        }
    }
    if (M.covered != seen)
        return {false, "overlap: covered set does not match the union of triples"};
    if (perfect && 3 * (long long)M.edges.size() != H.n())
        return {false, "incomplete: covers " + std::to_string(3 * M.edges.size()) +
                           " of " + std::to_string(H.n()) + " vertices"};
    return {true, ""};
}

namespace detail {
long long pair_degree(const Hypergraph3 & H, int u, int v) {
    long long d = 0;
    for (int w = 0; w < H.n(); ++w)
        if (w != u && w != v && H.has_edge(u, v, w)) ++d;
    return d;
}
} // namespace detail

} // namespace hm3
