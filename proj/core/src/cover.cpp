#include "hm3/cover.hpp"

#include "hm3/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace hm3::cover {

namespace {

VertexSet vec_set(int n, const std::vector<int> & vs) { return Bitset::of((std::size_t)n, vs); }

Rational twice(const Rational & x) { return Rational(2 * x.num, x.den); }
Rational square(const Rational & x) { return x * x; }

void erase_values(std::vector<int> & from, const std::vector<int> & values) {
    for (int v : values)
        from.erase(std::remove(from.begin(), from.end(), v), from.end());
}

} // namespace

VertexSet Tripartite::vertices(int n) const {
    Bitset out((std::size_t)n);
    for (const auto & cls : classes)
        for (int v : cls) out.set((std::size_t)v);
    return out;
}

bool Tripartite::complete_in(const Hypergraph3 & H) const {
    std::size_t sz = classes[0].size();
    if (sz == 0 || classes[1].size() != sz || classes[2].size() != sz) return false;
    VertexSet seen((std::size_t)H.n());
    for (const auto & cls : classes)
        for (int v : cls) {
            if (seen.test((std::size_t)v)) return false;
            seen.set((std::size_t)v);
        }
    for (int a : classes[0])
        for (int b : classes[1])
            for (int c : classes[2])
                if (!H.has_edge(a, b, c)) return false;
    return true;
}

VertexSet TripartiteCover::covered(int n) const {
    Bitset out((std::size_t)n);
    for (const auto & member : members)
        for (const auto & cls : member.classes)
            for (int v : cls) out.set((std::size_t)v);
    return out;
}

void TripartiteCover::verify(const Hypergraph3 & H) const {
    VertexSet seen((std::size_t)H.n());
    for (const auto & member : members) {
        if (member.t() != t)
            throw Error(Err::Internal, "cover member with nonuniform class size");
        if (!member.complete_in(H))
            throw Error(Err::Internal, "cover member not a complete tripartite subgraph");
        for (const auto & cls : member.classes)
            for (int v : cls) {
                if (!region.test((std::size_t)v))
                    throw Error(Err::Internal, "cover member leaves the region");
                if (seen.test((std::size_t)v))
                    throw Error(Err::Internal, "cover members overlap");
                seen.set((std::size_t)v);
            }
    }
}

TripartiteCover TripartiteCover::resplit(int new_t) const {
    if (new_t < 1) throw Error(Err::InvalidArgument, "class size must be >= 1");
    TripartiteCover out;
    out.t = new_t;
    out.region = region;
    for (const auto & member : members) {
        int chunks = member.t() / new_t;
        for (int k = 0; k < chunks; ++k) {
            Tripartite part;
            for (int l = 0; l < 3; ++l)
                part.classes[(std::size_t)l].assign(
                    member.classes[(std::size_t)l].begin() + (std::size_t)k * new_t,
                    member.classes[(std::size_t)l].begin() + (std::size_t)(k + 1) * new_t);
            out.members.push_back(std::move(part));
        }
    }
    return out;
}

Matching TripartiteCover::flatten(const Hypergraph3 & H) const {
    Matching M = Matching::empty(H.n());
    for (const auto & member : members)
        for (int k = 0; k < t; ++k)
            M.add({member.classes[0][(std::size_t)k], member.classes[1][(std::size_t)k],
                   member.classes[2][(std::size_t)k]});
    auto verdict = verify_matching(H, M, false);
    if (!verdict.ok) throw Error(Err::Internal, "cover flatten: " + verdict.reason);
    return M;
}

int LinkGraph::edge_count() const {
    int c = 0;
    for (int b = 0; b < 9; ++b) c += (bits >> b) & 1;
    return c;
}

LinkGraph pattern_b320() {
    LinkGraph L;
    L.set_edge(0, 0);
    L.set_edge(0, 1);
    L.set_edge(0, 2);
    L.set_edge(1, 1);
    L.set_edge(1, 2);
    return L;
}

LinkGraph pattern_b311() {
    LinkGraph L;
    L.set_edge(0, 0);
    L.set_edge(0, 1);
    L.set_edge(0, 2);
    L.set_edge(1, 0);
    L.set_edge(2, 0);
    return L;
}

namespace {

const std::array<std::array<int, 3>, 6> kPerms = {{{0, 1, 2},
                                                   {0, 2, 1},
                                                   {1, 0, 2},
                                                   {1, 2, 0},
                                                   {2, 0, 1},
                                                   {2, 1, 0}}};

} // namespace

LinkClass classify_link(const LinkGraph & L) {
    LinkClass out;
    // perfect matching over the 6 permutation matchings
    for (const auto & perm : kPerms) {
        bool ok = true;
        for (int p = 0; p < 3 && ok; ++p) ok = L.edge(p, perm[(std::size_t)p]);
        if (ok) {
            out.kind = LinkClass::Kind::HasPM;
            out.right_perm = perm;
            return out;
        }
    }
    // B320 containment, both side orientations
    LinkGraph b320 = pattern_b320();
    for (int transposed = 0; transposed < 2; ++transposed) {
        for (const auto & pl : kPerms)
            for (const auto & pr : kPerms) {
                bool ok = true;
                for (int p = 0; p < 3 && ok; ++p)
                    for (int q = 0; q < 3 && ok; ++q) {
                        if (!b320.edge(p, q)) continue;
                        int lp = pl[(std::size_t)p], rq = pr[(std::size_t)q];
                        ok = transposed ? L.edge(rq, lp) : L.edge(lp, rq);
                    }
                if (ok) {
                    out.kind = LinkClass::Kind::ContainsB320;
                    out.role_left = pl;
                    out.role_right = pr;
                    out.transposed = transposed != 0;
                    return out;
                }
            }
    }
    // B311 isomorphism (exact edge set; the pattern equals its transpose)
    LinkGraph b311 = pattern_b311();
    for (const auto & pl : kPerms)
        for (const auto & pr : kPerms) {
            bool ok = true;
            for (int p = 0; p < 3 && ok; ++p)
                for (int q = 0; q < 3 && ok; ++q)
                    ok = L.edge(pl[(std::size_t)p], pr[(std::size_t)q]) == b311.edge(p, q);
            if (ok) {
                out.kind = LinkClass::Kind::IsoB311;
                out.role_left = pl;
                out.role_right = pr;
                return out;
            }
        }
    out.kind = L.edge_count() <= 4 ? LinkClass::Kind::Sparse : LinkClass::Kind::Other;
    return out;
}

std::optional<Tripartite> find_k3t(const Hypergraph3 & H, const VertexSet & region, int t) {
    if (t < 1) throw Error(Err::InvalidArgument, "class size must be >= 1");
    if ((long long)region.count() < 3LL * t) return std::nullopt;

    std::optional<Tripartite> found;
    H.edge_bits().for_each([&](std::size_t r) {
        if (found) return;
        Triple seed = triple_unrank((long long)r);
        if (!region.test((std::size_t)seed[0]) || !region.test((std::size_t)seed[1]) ||
            !region.test((std::size_t)seed[2]))
            return;
        Tripartite cand;
        for (int l = 0; l < 3; ++l) cand.classes[(std::size_t)l] = {seed[(std::size_t)l]};
        if (t == 1) {
            found = cand;
            return;
        }
        VertexSet used = cand.vertices(H.n());
        while (true) {
            int grow = -1;
            for (int l = 0; l < 3; ++l)
                if ((int)cand.classes[(std::size_t)l].size() < t &&
                    (grow == -1 || cand.classes[(std::size_t)l].size() <
                                       cand.classes[(std::size_t)grow].size()))
                    grow = l;
            if (grow == -1) break; // all classes full
            const auto & other1 = cand.classes[(std::size_t)((grow + 1) % 3)];
            const auto & other2 = cand.classes[(std::size_t)((grow + 2) % 3)];
            int added = -1;
            for (std::size_t u = region.find_first(); u != Bitset::npos;
                 u = region.find_next(u + 1)) {
                if (used.test(u)) continue;
                bool ok = true;
                for (int v : other1)
                    for (int w : other2)
                        if (!(ok = ok && H.has_edge((int)u, v, w))) break;
                if (ok) { added = (int)u; break; }
            }
            if (added == -1) return; // dead seed; try the next one
            auto & cls = cand.classes[(std::size_t)grow];
            cls.insert(std::upper_bound(cls.begin(), cls.end(), added), added);
            used.set((std::size_t)added);
        }
        found = cand;
    });
    return found;
}

TripartiteCover greedy_tripartite_cover(const Hypergraph3 & H, const VertexSet & allowed,
                                        int t, const Rational & eta) {
    TripartiteCover cover;
    cover.t = t;
    cover.region = allowed;
    long long n_region = (long long)allowed.count();
    VertexSet rem = allowed;
    while ((long long)rem.count() >= 3LL * t) {
        if (n_region > 0 && !ratio_ge((long long)rem.count(), n_region, square(eta))) break;
        auto member = find_k3t(H, rem, t);
        if (!member) break;
        rem = rem.minus(member->vertices(H.n()));
        cover.members.push_back(std::move(*member));
    }
    return cover;
}

namespace {

// Shared tail of the two lemma pipelines: target class size resolution.
int product_target(const Rational & eta, std::size_t x_size) {
    double v = eta.to_double() / 4.0 * std::log2(double(std::max<std::size_t>(x_size, 1)));
    long long f = (long long)std::floor(v);
    return (int)std::max<long long>(1, f);
}

} // namespace

std::optional<Tripartite> tripartite_from_product(const Hypergraph3 & H, const VertexSet & X,
                                                  const VertexSet & Y, const VertexSet & Z,
                                                  const Rational & eta, int want) {
    auto xs = X.to_vector();
    auto ys = Y.to_vector();
    auto zs = Z.to_vector();
    if (xs.empty() || ys.empty() || zs.empty())
        throw Error(Err::InvalidArgument, "tripartite_from_product needs nonempty sets");
    long long e = cross_edges_product(H, X, Y, Z);
    long long denom = (long long)xs.size() * (long long)ys.size() * (long long)zs.size();
    if (!ratio_ge(e, denom, eta))
        throw Error(Err::DensityTooLow, "d3(Z, X x Y) below eta");

    gr::BipartiteGraph G1 = gr::BipartiteGraph::empty((int)(xs.size() * ys.size()), (int)zs.size());
    for (std::size_t ix = 0; ix < xs.size(); ++ix)
        for (std::size_t iy = 0; iy < ys.size(); ++iy)
            for (std::size_t iz = 0; iz < zs.size(); ++iz)
                if (H.has_edge(xs[ix], ys[iy], zs[iz]))
                    G1.add_edge((int)(ix * ys.size() + iy), (int)iz);
    auto cb = gr::pigeonhole_complete_bipartite(G1, eta);

    gr::BipartiteGraph G3 = gr::BipartiteGraph::empty((int)xs.size(), (int)ys.size());
    for (int p : cb.left) G3.add_edge(p / (int)ys.size(), p % (int)ys.size());

    int hi = want > 0 ? want : std::min(product_target(eta, xs.size()), (int)cb.right.size());
    int lo = want > 0 ? want : 1;
    if (want > 0 && (int)cb.right.size() < want) return std::nullopt;
    for (int s = hi; s >= lo; --s) {
        auto bic = gr::find_biclique_bipartite(G3, s);
        if (!bic) continue;
        Tripartite T;
        for (int i : bic->left) T.classes[0].push_back(xs[(std::size_t)i]);
        for (int j : bic->right) T.classes[1].push_back(ys[(std::size_t)j]);
        for (int k = 0; k < s; ++k) T.classes[2].push_back(zs[(std::size_t)cb.right[(std::size_t)k]]);
        for (auto & cls : T.classes) std::sort(cls.begin(), cls.end());
        if (!T.complete_in(H))
            throw Error(Err::Internal, "product pipeline produced an incomplete tripartite");
        return T;
    }
    return std::nullopt;
}

std::optional<Tripartite> tripartite_from_pairs(const Hypergraph3 & H, const VertexSet & A,
                                                const VertexSet & B, const Rational & eta,
                                                int want) {
    auto as = A.to_vector();
    auto bs = B.to_vector();
    if (as.empty() || bs.size() < 2)
        throw Error(Err::InvalidArgument, "tripartite_from_pairs needs |A| >= 1, |B| >= 2");
    long long e = cross_edges_pairs(H, A, B);
    long long denom = (long long)as.size() * binom2((long long)bs.size());
    if (!ratio_ge(e, denom, eta))
        throw Error(Err::DensityTooLow, "d3(A, C(B,2)) below eta");

    // pairs of B indexed lexicographically
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j) pairs.emplace_back((int)i, (int)j);
    gr::BipartiteGraph G1 = gr::BipartiteGraph::empty((int)as.size(), (int)pairs.size());
    for (std::size_t ia = 0; ia < as.size(); ++ia)
        for (std::size_t ip = 0; ip < pairs.size(); ++ip)
            if (H.has_edge(as[ia], bs[(std::size_t)pairs[ip].first], bs[(std::size_t)pairs[ip].second]))
                G1.add_edge((int)ia, (int)ip);
    auto cb = gr::pigeonhole_complete_bipartite(G1, eta);

    gr::Graph G2 = gr::Graph::empty((int)bs.size());
    for (int ip : cb.right) G2.add_edge(pairs[(std::size_t)ip].first, pairs[(std::size_t)ip].second);

    long long s_formula = floor_mul(eta * Rational(1, 2), (long long)as.size());
    int hi = want > 0 ? want : (int)std::min<long long>(std::max<long long>(1, s_formula),
                                                        (long long)cb.left.size());
    int lo = want > 0 ? want : 1;
    if (want > 0 && (int)cb.left.size() < want) return std::nullopt;
    for (int s = hi; s >= lo; --s) {
        auto bic = gr::find_biclique_general(G2, s);
        if (!bic) continue;
        Tripartite T;
        for (int k = 0; k < s; ++k) T.classes[0].push_back(as[(std::size_t)cb.left[(std::size_t)k]]);
        for (int i : bic->left) T.classes[1].push_back(bs[(std::size_t)i]);
        for (int j : bic->right) T.classes[2].push_back(bs[(std::size_t)j]);
        for (auto & cls : T.classes) std::sort(cls.begin(), cls.end());
        if (!T.complete_in(H))
            throw Error(Err::Internal, "pair pipeline produced an incomplete tripartite");
        return T;
    }
    return std::nullopt;
}

int k_sidedness(const Tripartite & T, const VertexSet & leftover, const Hypergraph3 & H,
                const Rational & eta) {
    if (leftover.count() < 2) return 0;
    int k = 0;
    long long pairs = binom2((long long)leftover.count());
    for (const auto & cls : T.classes) {
        VertexSet V = vec_set(H.n(), cls);
        long long e = cross_edges_pairs(H, V, leftover);
        if (ratio_ge(e, (long long)cls.size() * pairs, twice(eta))) ++k;
    }
    return k;
}

LinkGraph link_graph_of_pair(const Tripartite & Ti, const Tripartite & Tj,
                             const VertexSet & leftover, const Hypergraph3 & H,
                             const Rational & eta) {
    LinkGraph L;
    long long ni = (long long)leftover.count();
    if (ni == 0) return L;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            VertexSet Vp = vec_set(H.n(), Ti.classes[(std::size_t)p]);
            VertexSet Vq = vec_set(H.n(), Tj.classes[(std::size_t)q]);
            long long e = cross_edges_product(H, leftover, Vp, Vq);
            long long denom = ni * (long long)Ti.classes[(std::size_t)p].size() *
                              (long long)Tj.classes[(std::size_t)q].size();
            if (ratio_ge(e, denom, twice(eta))) L.set_edge(p, q);
        }
    return L;
}

// ---------------------------------------------------------------------------
// absorbing matching

bool edge_absorbs(const Hypergraph3 & H, const Triple & e, const Triple & W) {
    std::array<int, 6> s{e[0], e[1], e[2], W[0], W[1], W[2]};
    std::sort(s.begin(), s.end());
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (s[(std::size_t)i] == s[(std::size_t)j])
                throw Error(Err::InvalidArgument, "edge_absorbs needs disjoint e and W");
    // splits pairing s[0] with each 2-subset of the rest
    for (int i = 1; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            std::array<int, 3> first{s[0], s[(std::size_t)i], s[(std::size_t)j]};
            std::array<int, 3> second;
            int k = 0;
            for (int x = 1; x < 6; ++x)
                if (x != i && x != j) second[(std::size_t)k++] = s[(std::size_t)x];
            if (H.has_edge(first[0], first[1], first[2]) &&
                H.has_edge(second[0], second[1], second[2]))
                return true;
        }
    return false;
}

AbsorbingMatching build_absorbing_matching(const Hypergraph3 & H, const EngineParams & params) {
    if (H.m() == 0) throw Error(Err::EmptyGraph, "no edges to absorb with");
    int n = H.n();
    long long cap = params.absorber_cap > 0
                        ? params.absorber_cap
                        : std::max<long long>(1, ceil_mul(params.eta * params.eta * params.eta, n));

    AbsorbingMatching out;
    out.M = Matching::empty(n);

    Rng rng(params.seed);
    for (int i = 0; i < params.probe_count; ++i) {
        int a = (int)rng.below((std::uint64_t)n);
        int b, c;
        do { b = (int)rng.below((std::uint64_t)n); } while (b == a);
        do { c = (int)rng.below((std::uint64_t)n); } while (c == a || c == b);
        Triple w{a, b, c};
        std::sort(w.begin(), w.end());
        out.probes.push_back(w);
    }

    auto edges = H.edges();
    std::vector<VertexSet> masks;
    masks.reserve(edges.size());
    for (const auto & t : edges) masks.push_back(vec_set(n, {t[0], t[1], t[2]}));

    VertexSet used((std::size_t)n);
    std::vector<char> handled(out.probes.size(), 0);
    for (long long round = 0; round < cap; ++round) {
        int best = -1;
        long long best_score = -1;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (masks[i].intersects(used)) continue;
            long long score = 0;
            for (std::size_t p = 0; p < out.probes.size(); ++p) {
                if (handled[p]) continue;
                const Triple & w = out.probes[p];
                if (masks[i].test((std::size_t)w[0]) || masks[i].test((std::size_t)w[1]) ||
                    masks[i].test((std::size_t)w[2]))
                    continue;
                if (used.test((std::size_t)w[0]) || used.test((std::size_t)w[1]) ||
                    used.test((std::size_t)w[2]))
                    continue;
                if (edge_absorbs(H, edges[i], w)) ++score;
            }
            if (score > best_score) { best_score = score; best = (int)i; }
        }
        if (best == -1) break;
        out.M.add(edges[(std::size_t)best]);
        used = used | masks[(std::size_t)best];
        for (std::size_t p = 0; p < out.probes.size(); ++p) {
            if (handled[p]) continue;
            const Triple & w = out.probes[p];
            bool disj = !masks[(std::size_t)best].test((std::size_t)w[0]) &&
                        !masks[(std::size_t)best].test((std::size_t)w[1]) &&
                        !masks[(std::size_t)best].test((std::size_t)w[2]);
            if (disj && edge_absorbs(H, edges[(std::size_t)best], w)) handled[p] = 1;
        }
    }

    // record which edge of M (first in order) absorbs each probe
    for (const auto & w : out.probes) {
        int idx = -1;
        bool overlaps = out.M.covered.test((std::size_t)w[0]) ||
                        out.M.covered.test((std::size_t)w[1]) ||
                        out.M.covered.test((std::size_t)w[2]);
        if (!overlaps) {
            for (std::size_t j = 0; j < out.M.edges.size(); ++j)
                if (edge_absorbs(H, out.M.edges[j], w)) { idx = (int)j; break; }
        }
        out.absorber_index.push_back(idx);
    }
    return out;
}

Matching absorb_leftover(const Hypergraph3 & H, const AbsorbingMatching & AM,
                         const VertexSet & W, const Matching & partial) {
    auto ws = W.to_vector();
    if (ws.size() % 3 != 0)
        throw Error(Err::InvalidOrder, "leftover size must be divisible by 3",
                    {(long long)ws.size()});
    if (W.intersects(partial.covered))
        throw Error(Err::InvalidArgument, "leftover intersects the partial matching");
    if (W.intersects(AM.M.covered))
        throw Error(Err::InvalidArgument, "leftover intersects the absorbing matching");

    std::vector<Triple> chunks;
    for (std::size_t i = 0; i < ws.size(); i += 3)
        chunks.push_back({ws[i], ws[i + 1], ws[i + 2]});

    // assign chunks to distinct compatible absorber edges
    gr::BipartiteGraph compat = gr::BipartiteGraph::empty((int)AM.M.edges.size(), (int)chunks.size());
    for (std::size_t j = 0; j < AM.M.edges.size(); ++j)
        for (std::size_t i = 0; i < chunks.size(); ++i)
            if (edge_absorbs(H, AM.M.edges[j], chunks[i])) compat.add_edge((int)j, (int)i);
    auto match_chunk = gr::max_bipartite_matching(compat); // per chunk: edge index or -1
    for (std::size_t i = 0; i < chunks.size(); ++i)
        if (match_chunk[i] == -1)
            throw Error(Err::AbsorptionFailed,
                        "no available absorber for 3-set {" + std::to_string(chunks[i][0]) + "," +
                            std::to_string(chunks[i][1]) + "," + std::to_string(chunks[i][2]) + "}",
                        {chunks[i][0], chunks[i][1], chunks[i][2]});

    Matching out = partial;
    std::vector<int> chunk_of_edge((std::size_t)AM.M.edges.size(), -1);
    for (std::size_t i = 0; i < chunks.size(); ++i)
        chunk_of_edge[(std::size_t)match_chunk[i]] = (int)i;
    for (std::size_t j = 0; j < AM.M.edges.size(); ++j) {
        if (chunk_of_edge[j] == -1) {
            out.add(AM.M.edges[j]);
            continue;
        }
        const Triple & e = AM.M.edges[j];
        const Triple & w = chunks[(std::size_t)chunk_of_edge[j]];
        std::array<int, 6> s{e[0], e[1], e[2], w[0], w[1], w[2]};
        std::sort(s.begin(), s.end());
        bool placed = false;
        for (int i = 1; i < 6 && !placed; ++i)
            for (int jj = i + 1; jj < 6 && !placed; ++jj) {
                Triple first{s[0], s[(std::size_t)i], s[(std::size_t)jj]};
                Triple second;
                int k = 0;
                for (int x = 1; x < 6; ++x)
                    if (x != i && x != jj) second[(std::size_t)k++] = s[(std::size_t)x];
                if (H.has_edge(first[0], first[1], first[2]) &&
                    H.has_edge(second[0], second[1], second[2])) {
                    out.add(first);
                    out.add(second);
                    placed = true;
                }
            }
        if (!placed) throw Error(Err::Internal, "absorber lost its split");
    }
    auto verdict = verify_matching(H, out, false);
    if (!verdict.ok) throw Error(Err::Internal, "absorb result invalid: " + verdict.reason);
    VertexSet expect = partial.covered | AM.M.covered | W;
    if (out.covered != expect)
        throw Error(Err::Internal, "absorb result does not cover V(M) and W");
    return out;
}

// ---------------------------------------------------------------------------
// claim moves

namespace {

struct WorkState {
    std::vector<Tripartite> members;
    VertexSet leftover;

    long long covered_count() const {
        long long c = 0;
        for (const auto & m : members)
            for (const auto & cls : m.classes) c += (long long)cls.size();
        return c;
    }
};

// Trim every class of `member` to its minimum class size, returning the
// dropped vertices (largest ids first within each class).
std::vector<int> trim_balanced(Tripartite & member) {
    std::size_t lo = std::min({member.classes[0].size(), member.classes[1].size(),
                               member.classes[2].size()});
    std::vector<int> dropped;
    for (auto & cls : member.classes) {
        while (cls.size() > lo) {
            dropped.push_back(cls.back());
            cls.pop_back();
        }
    }
    return dropped;
}

// Rebuild a uniform cover from mixed-size members: every member splits into
// chunks of `new_t`; remainder vertices return to the leftover implicitly.
TripartiteCover uniform_cover(const TripartiteCover & base, std::vector<Tripartite> members,
                              int new_t) {
    TripartiteCover out;
    out.t = new_t;
    out.region = base.region;
    for (auto & member : members) {
        std::size_t lo = std::min({member.classes[0].size(), member.classes[1].size(),
                                   member.classes[2].size()});
        int chunks = (int)(lo / (std::size_t)new_t);
        for (int k = 0; k < chunks; ++k) {
            Tripartite part;
            for (int l = 0; l < 3; ++l)
                part.classes[(std::size_t)l].assign(
                    member.classes[(std::size_t)l].begin() + (std::size_t)k * new_t,
                    member.classes[(std::size_t)l].begin() + (std::size_t)(k + 1) * new_t);
            out.members.push_back(std::move(part));
        }
    }
    return out;
}

} // namespace

std::optional<TripartiteCover> improve_two_sided(const TripartiteCover & cover,
                                                 const Hypergraph3 & H,
                                                 const EngineParams & params) {
    int n = H.n();
    VertexSet I = cover.leftover(n);
    if (I.count() < 2 || cover.members.empty()) return std::nullopt;
    const Rational & eta = params.eta;

    std::vector<std::pair<std::size_t, std::array<int, 2>>> targets; // member, two dense classes
    long long two_sided_vertices = 0;
    for (std::size_t i = 0; i < cover.members.size(); ++i) {
        const auto & member = cover.members[i];
        std::array<int, 2> dense{-1, -1};
        int k = 0;
        long long pairs = binom2((long long)I.count());
        for (int l = 0; l < 3 && k < 2; ++l) {
            VertexSet V = vec_set(n, member.classes[(std::size_t)l]);
            long long e = cross_edges_pairs(H, V, I);
            if (ratio_ge(e, (long long)member.classes[(std::size_t)l].size() * pairs, twice(eta)))
                dense[(std::size_t)k++] = l;
        }
        if (k_sidedness(member, I, H, eta) >= 2) {
            targets.emplace_back(i, dense);
            two_sided_vertices += 3LL * cover.t;
        }
    }
    // claim precondition: the >= 2-sided members carry more than an
    // eta-fraction of the cover
    if (targets.empty() ||
        !(__int128(two_sided_vertices) * eta.den > __int128(eta.num) * cover.covered_count()))
        return std::nullopt;

    int s = (int)std::max<long long>(1, floor_mul(eta * Rational(1, 2), cover.t));

    WorkState work{cover.members, I};
    for (auto & [idx, dense] : targets) {
        if (work.leftover.count() < 4) break;
        Tripartite & member = work.members[idx];
        int l1 = dense[0], l2 = dense[1];
        VertexSet saved_leftover = work.leftover;
        Tripartite saved_member = member;

        auto extract = [&](int cls_idx) -> std::optional<Tripartite> {
            VertexSet V = vec_set(n, member.classes[(std::size_t)cls_idx]);
            if (V.none() || work.leftover.count() < 2) return std::nullopt;
            long long e = cross_edges_pairs(H, V, work.leftover);
            long long denom = (long long)V.count() * binom2((long long)work.leftover.count());
            if (denom == 0 || !ratio_ge(e, denom, eta)) return std::nullopt;
            auto ext = tripartite_from_pairs(H, V, work.leftover, eta, s);
            if (!ext) return std::nullopt;
            erase_values(member.classes[(std::size_t)cls_idx], ext->classes[0]);
            for (int v : ext->classes[1]) work.leftover.reset((std::size_t)v);
            for (int v : ext->classes[2]) work.leftover.reset((std::size_t)v);
            return ext;
        };

        auto e1 = extract(l1);
        if (!e1) { member = saved_member; work.leftover = saved_leftover; continue; }
        auto e2 = extract(l2);
        if (!e2) { member = saved_member; work.leftover = saved_leftover; continue; }
        // rebalance: the untouched class sheds its surplus to the leftover
        trim_balanced(member);
        work.members.push_back(std::move(*e1));
        work.members.push_back(std::move(*e2));
    }

    TripartiteCover result = uniform_cover(cover, std::move(work.members), s);
    long long gain = result.covered_count() - cover.covered_count();
    if (gain < params.min_gain) return std::nullopt;
    result.verify(H);
    return result;
}

std::optional<TripartiteCover> improve_by_links(const TripartiteCover & cover,
                                                const Hypergraph3 & H,
                                                const EngineParams & params) {
    int n = H.n();
    std::size_t m = cover.members.size();
    if (m < 2) return std::nullopt;
    VertexSet I = cover.leftover(n);
    if (I.none()) return std::nullopt;
    const Rational & eta = params.eta;

    std::map<std::pair<std::size_t, std::size_t>, LinkClass> classes;
    long long qualifying = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            LinkGraph L = link_graph_of_pair(cover.members[i], cover.members[j], I, H, eta);
            LinkClass cls = classify_link(L);
            classes[{i, j}] = cls;
            if (cls.kind == LinkClass::Kind::HasPM || cls.kind == LinkClass::Kind::ContainsB320)
                ++qualifying;
        }
    long long total_pairs = binom2((long long)m);
    if (qualifying == 0 || !ratio_ge(qualifying, total_pairs, eta)) return std::nullopt;

    // disjoint pairs through the folk lemmas on the auxiliary graph
    gr::Graph aux = gr::Graph::empty((int)m);
    for (const auto & [key, cls] : classes)
        if (cls.kind == LinkClass::Kind::HasPM || cls.kind == LinkClass::Kind::ContainsB320)
            aux.add_edge((int)key.first, (int)key.second);
    Bitset keep = gr::min_degree_subgraph(aux);
    gr::Graph sub = gr::Graph::empty((int)m);
    for (int u = 0; u < (int)m; ++u)
        for (int v = u + 1; v < (int)m; ++v)
            if (keep.test((std::size_t)u) && keep.test((std::size_t)v) && aux.has_edge(u, v))
                sub.add_edge(u, v);
    auto matched_pairs = gr::greedy_graph_matching(sub);
    if (matched_pairs.empty()) return std::nullopt;

    int s = product_target(eta, (std::size_t)cover.t);

    WorkState work{cover.members, I};
    for (auto [i, j] : matched_pairs) {
        const LinkClass & cls = classes[{(std::size_t)i, (std::size_t)j}];
        std::vector<Tripartite> saved{work.members[(std::size_t)i], work.members[(std::size_t)j]};
        VertexSet saved_leftover = work.leftover;
        std::vector<Tripartite> new_members;
        long long taken_from_leftover = 0;

        auto extract = [&](std::vector<int> & xcls, std::vector<int> & ycls,
                           int want) -> bool {
            VertexSet X = vec_set(n, xcls), Y = vec_set(n, ycls);
            if ((int)X.count() < want || (int)Y.count() < want) return false;
            if (work.leftover.count() < (std::size_t)want) return false;
            long long e = cross_edges_product(H, work.leftover, X, Y);
            long long denom = (long long)work.leftover.count() * (long long)X.count() *
                              (long long)Y.count();
            if (denom == 0 || !ratio_ge(e, denom, eta)) return false;
            auto ext = tripartite_from_product(H, X, Y, work.leftover, eta, want);
            if (!ext) return false;
            erase_values(xcls, ext->classes[0]);
            erase_values(ycls, ext->classes[1]);
            for (int v : ext->classes[2]) work.leftover.reset((std::size_t)v);
            taken_from_leftover += want;
            new_members.push_back(std::move(*ext));
            return true;
        };

        bool ok = true;
        if (cls.kind == LinkClass::Kind::HasPM) {
            for (int l = 0; l < 3 && ok; ++l)
                ok = extract(work.members[(std::size_t)i].classes[(std::size_t)l],
                             work.members[(std::size_t)j].classes[(std::size_t)cls.right_perm[(std::size_t)l]],
                             s);
        } else { // ContainsB320
            // the member hosting the degree-(3,2) side plays "i"
            std::size_t si = cls.transposed ? (std::size_t)j : (std::size_t)i;
            std::size_t sj = cls.transposed ? (std::size_t)i : (std::size_t)j;
            int L0 = cls.role_left[0], L1 = cls.role_left[1];
            int R0 = cls.role_right[0], R1 = cls.role_right[1], R2 = cls.role_right[2];
            if (cover.t < 3 * s) {
                ok = false; // removals of 3s per heavy class cannot fit
            } else {
                ok = extract(work.members[si].classes[(std::size_t)L0],
                             work.members[sj].classes[(std::size_t)R0], 2 * s) &&
                     extract(work.members[si].classes[(std::size_t)L1],
                             work.members[sj].classes[(std::size_t)R2], 2 * s) &&
                     extract(work.members[si].classes[(std::size_t)L0],
                             work.members[sj].classes[(std::size_t)R1], s) &&
                     extract(work.members[si].classes[(std::size_t)L1],
                             work.members[sj].classes[(std::size_t)R1], s);
            }
        }

        if (!ok) {
            work.members[(std::size_t)i] = saved[0];
            work.members[(std::size_t)j] = saved[1];
            work.leftover = saved_leftover;
            continue;
        }
        long long discarded = 0;
        discarded += (long long)trim_balanced(work.members[(std::size_t)i]).size();
        discarded += (long long)trim_balanced(work.members[(std::size_t)j]).size();
        if (taken_from_leftover - discarded <= 0) {
            work.members[(std::size_t)i] = saved[0];
            work.members[(std::size_t)j] = saved[1];
            work.leftover = saved_leftover;
            continue;
        }
        for (auto & nm : new_members) work.members.push_back(std::move(nm));
    }

    TripartiteCover result = uniform_cover(cover, std::move(work.members), s);
    long long gain = result.covered_count() - cover.covered_count();
    if (gain < params.min_gain) return std::nullopt;
    result.verify(H);
    return result;
}

ExtremalOrImproved improve_or_report_extremal(const TripartiteCover & cover,
                                              const Hypergraph3 & H,
                                              const EngineParams & params) {
    ExtremalOrImproved out;
    int n = H.n();
    std::size_t m = cover.members.size();
    if (m < 2) return out;
    VertexSet I = cover.leftover(n);
    const Rational & eta = params.eta;
    const Rational & alpha = params.alpha;

    std::map<std::pair<std::size_t, std::size_t>, LinkClass> classes;
    long long b311_count = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            LinkGraph L = link_graph_of_pair(cover.members[i], cover.members[j], I, H, eta);
            LinkClass cls = classify_link(L);
            classes[{i, j}] = cls;
            if (cls.kind == LinkClass::Kind::IsoB311) ++b311_count;
        }
    long long total_pairs = binom2((long long)m);
    // need b311_count / total >= 1 - 2 sqrt(eta), i.e. miss-fraction <= sqrt(4 eta)
    long long missing = total_pairs - b311_count;
    Rational four_eta(4 * eta.num, eta.den);
    if (b311_count == 0 || ratio_gt_root(missing, total_pairs, four_eta, 2)) return out;

    gr::Graph aux = gr::Graph::empty((int)m);
    for (const auto & [key, cls] : classes)
        if (cls.kind == LinkClass::Kind::IsoB311) aux.add_edge((int)key.first, (int)key.second);
    Bitset keep = gr::min_degree_subgraph(aux);
    gr::Graph sub = gr::Graph::empty((int)m);
    for (int u = 0; u < (int)m; ++u)
        for (int v = u + 1; v < (int)m; ++v)
            if (keep.test((std::size_t)u) && keep.test((std::size_t)v) && aux.has_edge(u, v))
                sub.add_edge(u, v);
    auto matched_pairs = gr::greedy_graph_matching(sub);
    if (matched_pairs.empty()) return out;

    // per matched member: which class carries link degree 3
    std::map<std::size_t, int> deg3_class;
    for (auto [i, j] : matched_pairs) {
        const LinkClass & cls = classes[{(std::size_t)i, (std::size_t)j}];
        deg3_class[(std::size_t)i] = cls.role_left[0];
        deg3_class[(std::size_t)j] = cls.role_right[0];
    }

    int s = product_target(eta, (std::size_t)cover.t);

    // phase A: try to grow the cover
    {
        WorkState work{cover.members, I};
        long long taken_from_leftover = 0;
        std::vector<Tripartite> new_members;
        std::map<std::size_t, bool> extracted; // members whose light classes hold extras

        auto extract_product = [&](std::vector<int> & xcls, std::vector<int> & ycls,
                                   int want) -> bool {
            VertexSet X = vec_set(n, xcls), Y = vec_set(n, ycls);
            if ((int)X.count() < want || (int)Y.count() < want) return false;
            if (work.leftover.count() < (std::size_t)want) return false;
            long long e = cross_edges_product(H, work.leftover, X, Y);
            long long denom = (long long)work.leftover.count() * (long long)X.count() *
                              (long long)Y.count();
            if (denom == 0 || !ratio_ge(e, denom, eta)) return false;
            auto ext = tripartite_from_product(H, X, Y, work.leftover, eta, want);
            if (!ext) return false;
            erase_values(xcls, ext->classes[0]);
            erase_values(ycls, ext->classes[1]);
            for (int v : ext->classes[2]) work.leftover.reset((std::size_t)v);
            taken_from_leftover += want;
            new_members.push_back(std::move(*ext));
            return true;
        };

        if (cover.t >= 2 * s) {
            for (auto [i, j] : matched_pairs) {
                std::vector<Tripartite> saved{work.members[(std::size_t)i],
                                              work.members[(std::size_t)j]};
                VertexSet saved_leftover = work.leftover;
                std::size_t saved_new = new_members.size();
                long long saved_taken = taken_from_leftover;
                int di = deg3_class[(std::size_t)i], dj = deg3_class[(std::size_t)j];
                std::array<int, 2> oi{(di + 1) % 3, (di + 2) % 3};
                std::array<int, 2> oj{(dj + 1) % 3, (dj + 2) % 3};
                bool ok = extract_product(work.members[(std::size_t)i].classes[(std::size_t)di],
                                          work.members[(std::size_t)j].classes[(std::size_t)oj[0]], s) &&
                          extract_product(work.members[(std::size_t)i].classes[(std::size_t)di],
                                          work.members[(std::size_t)j].classes[(std::size_t)oj[1]], s) &&
                          extract_product(work.members[(std::size_t)i].classes[(std::size_t)oi[0]],
                                          work.members[(std::size_t)j].classes[(std::size_t)dj], s) &&
                          extract_product(work.members[(std::size_t)i].classes[(std::size_t)oi[1]],
                                          work.members[(std::size_t)j].classes[(std::size_t)dj], s);
                if (!ok) {
                    work.members[(std::size_t)i] = saved[0];
                    work.members[(std::size_t)j] = saved[1];
                    work.leftover = saved_leftover;
                    new_members.resize(saved_new);
                    taken_from_leftover = saved_taken;
                    continue;
                }
                extracted[(std::size_t)i] = extracted[(std::size_t)j] = true;
            }
        }

        // light-class extras (vertices above the member's minimum class size)
        auto extras_set = [&]() {
            VertexSet extras((std::size_t)n);
            for (const auto & [idx, flag] : extracted) {
                if (!flag) continue;
                const auto & member = work.members[idx];
                std::size_t lo = std::min({member.classes[0].size(), member.classes[1].size(),
                                           member.classes[2].size()});
                for (const auto & cls : member.classes)
                    for (std::size_t k = lo; k < cls.size(); ++k)
                        extras.set((std::size_t)cls[k]);
            }
            return extras;
        };

        // union of the light classes over the matched members
        auto light_union = [&]() {
            VertexSet u((std::size_t)n);
            for (const auto & [idx, d3] : deg3_class)
                for (int l = 0; l < 3; ++l) {
                    if (l == d3) continue;
                    for (int v : work.members[idx].classes[(std::size_t)l]) u.set((std::size_t)v);
                }
            return u;
        };

        VertexSet extras = extras_set();
        if (extras.count() >= 3) {
            VertexSet v23 = light_union();
            // density condition on the light side itself
            bool dense_inside = false;
            if (v23.count() >= 3) {
                Rational d = subset_density(H, v23);
                dense_inside = ratio_ge_root(d.num, d.den, eta, 2);
            }
            if (dense_inside) {
                VertexSet allowed = extras;
                while (allowed.count() >= 3) {
                    auto found = find_k3t(H, allowed, s);
                    if (!found) break;
                    VertexSet verts = found->vertices(n);
                    for (auto & [idx, flag] : extracted) {
                        (void)flag;
                        for (auto & cls : work.members[idx].classes)
                            cls.erase(std::remove_if(cls.begin(), cls.end(),
                                                     [&](int v) { return verts.test((std::size_t)v); }),
                                      cls.end());
                    }
                    allowed = allowed.minus(verts);
                    new_members.push_back(std::move(*found));
                }
            }
            extras = extras_set();
            if (extras.any() && work.leftover.count() >= 2) {
                long long e = cross_edges_pairs(H, extras, work.leftover);
                long long denom = (long long)extras.count() * binom2((long long)work.leftover.count());
                if (denom > 0 && ratio_ge_root(e, denom, eta, 2)) {
                    while (extras.any() && work.leftover.count() >= 2) {
                        std::optional<Tripartite> ext;
                        try {
                            ext = tripartite_from_pairs(H, extras, work.leftover, eta, s);
                        } catch (const Error &) {
                            break;
                        }
                        if (!ext) break;
                        VertexSet averts = vec_set(n, ext->classes[0]);
                        for (auto & [idx, flag] : extracted) {
                            (void)flag;
                            for (auto & cls : work.members[idx].classes)
                                cls.erase(std::remove_if(cls.begin(), cls.end(),
                                                         [&](int v) { return averts.test((std::size_t)v); }),
                                          cls.end());
                        }
                        for (int v : ext->classes[1]) work.leftover.reset((std::size_t)v);
                        for (int v : ext->classes[2]) work.leftover.reset((std::size_t)v);
                        taken_from_leftover += 2LL * s;
                        new_members.push_back(std::move(*ext));
                        extras = extras_set();
                    }
                }
            }
        }

        if (!new_members.empty()) {
            for (auto & member : work.members) trim_balanced(member);
            for (auto & nm : new_members) work.members.push_back(std::move(nm));
            TripartiteCover result = uniform_cover(cover, std::move(work.members), s);
            long long gain = result.covered_count() - cover.covered_count();
            if (gain >= params.min_gain) {
                result.verify(H);
                out.improved = std::move(result);
                return out;
            }
        }
    }

    // phase B: certificate from the untouched cover
    {
        VertexSet B = I;
        for (const auto & [idx, d3] : deg3_class)
            for (int l = 0; l < 3; ++l) {
                if (l == d3) continue;
                for (int v : cover.members[idx].classes[(std::size_t)l]) B.set((std::size_t)v);
            }
        long long n_region = (long long)cover.region.count();
        long long bsize = (long long)B.count();
        // |B| >= (2/3 - alpha) n  <=>  3 |B| alpha.den >= (2 alpha.den - 3 alpha.num) n
        bool big_enough =
            3 * bsize * alpha.den >= (2 * alpha.den - 3 * alpha.num) * n_region;
        if (big_enough && bsize >= 3) {
            Rational d = subset_density(H, B);
            if (d < alpha) {
                out.extremal_set = B;
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// driver

namespace {

void extend_greedily(TripartiteCover & cover, const Hypergraph3 & H, const Rational & eta) {
    int n = H.n();
    long long n_region = (long long)cover.region.count();
    VertexSet rem = cover.leftover(n);
    while ((long long)rem.count() >= 3LL * cover.t) {
        if (n_region > 0 && !ratio_ge((long long)rem.count(), n_region, square(eta))) break;
        auto member = find_k3t(H, rem, cover.t);
        if (!member) break;
        rem = rem.minus(member->vertices(n));
        cover.members.push_back(std::move(*member));
    }
}

} // namespace

CoverOutcome almost_perfect_matching(const Hypergraph3 & H, const EngineParams & params,
                                     std::optional<VertexSet> region,
                                     const CoverObserver & observer) {
    int n = H.n();
    VertexSet reg = region ? *region : H.all_vertices();
    long long n_region = (long long)reg.count();

    CoverOutcome outcome;
    TripartiteCover cover = greedy_tripartite_cover(H, reg, params.t, params.eta);
    cover.verify(H);

    auto finish = [&](CoverOutcome::Kind kind, std::string note) {
        outcome.kind = kind;
        outcome.matching = cover.flatten(H);
        outcome.uncovered = cover.leftover(n);
        outcome.stall_note = std::move(note);
        return outcome;
    };

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        extend_greedily(cover, H, params.eta);
        // accounting identity diagnostic on (leftover, covered)
        degree_accounting(H, cover.leftover(n));

        long long before = cover.covered_count();
        VertexSet I = cover.leftover(n);
        if (n_region == 0 || ratio_lt((long long)I.count(), n_region, square(params.eta)))
            return finish(CoverOutcome::Kind::AlmostPerfect, "");

        IterationRecord rec;
        rec.iter = iter;
        rec.t = cover.t;
        rec.move = "none";

        if (auto better = improve_two_sided(cover, H, params)) {
            cover = std::move(*better);
            rec.move = "claim1";
        } else if (auto better2 = improve_by_links(cover, H, params)) {
            cover = std::move(*better2);
            rec.move = "claim2";
        } else {
            auto third = improve_or_report_extremal(cover, H, params);
            if (third.improved) {
                cover = std::move(*third.improved);
                rec.move = "claim3";
            } else if (third.extremal_set) {
                rec.cover_vertices = cover.covered_count();
                rec.leftover = (long long)cover.leftover(n).count();
                outcome.trace.push_back(rec);
                if (observer) observer(cover, rec);
                outcome.extremal_set = third.extremal_set;
                return finish(CoverOutcome::Kind::Extremal, "");
            }
        }

        extend_greedily(cover, H, params.eta);
        rec.cover_vertices = cover.covered_count();
        rec.t = cover.t;
        rec.leftover = (long long)cover.leftover(n).count();
        rec.gain = cover.covered_count() - before;
        outcome.trace.push_back(rec);
        if (observer) observer(cover, rec);

        if (rec.move == "none" && rec.gain == 0) {
            VertexSet stalled_I = cover.leftover(n);
            std::string note = "no move applies; leftover " +
                               std::to_string(stalled_I.count());
            if (stalled_I.count() >= 3)
                note += ", d3(leftover) = " + subset_density(H, stalled_I).str();
            return finish(CoverOutcome::Kind::Stalled, note);
        }
    }
    return finish(CoverOutcome::Kind::Stalled, "iteration limit reached");
}

void write_trace_csv(std::ostream & os, const std::vector<IterationRecord> & rows, bool header) {
    if (header) os << "iter,cover_vertices,t,leftover,move,gain\n";
    for (const auto & r : rows)
        os << r.iter << ',' << r.cover_vertices << ',' << r.t << ',' << r.leftover << ','
           << r.move << ',' << r.gain << '\n';
}

} // namespace hm3::cover
