#include "hm3/extremal.hpp"

#include "hm3/graphs.hpp"
#include "hm3/rng.hpp"
#include "hm3/threshold_lab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

namespace hm3::extremal {

namespace {

void record(std::vector<StageRecord> * trace, const std::string & stage,
            const ExtremalPartition & P, long long committed) {
    if (!trace) return;
    StageRecord r;
    r.stage = stage;
    r.s_a = (long long)P.S_A.count();
    r.s_b = (long long)P.S_B.count();
    r.x_a = (long long)P.X_A.count();
    r.x_b = (long long)P.X_B.count();
    r.edges_committed = committed;
    r.a_rem = (long long)P.A.count();
    r.b_rem = (long long)P.B.count();
    auto bounds = P.size_bounds();
    if (!bounds.all()) {
        r.note = "size bounds exceeded:";
        if (!bounds.x_a) r.note += " X_A";
        if (!bounds.x_b) r.note += " X_B";
        if (!bounds.s_a) r.note += " S_A";
        if (!bounds.s_b) r.note += " S_B";
    }
    trace->push_back(std::move(r));
}

} // namespace

void write_stage_csv(std::ostream & os, const std::vector<StageRecord> & rows, bool header) {
    if (header) os << "stage,s_a,s_b,x_a,x_b,edges_committed,a_rem,b_rem\n";
    for (const auto & r : rows)
        os << r.stage << ',' << r.s_a << ',' << r.s_b << ',' << r.x_a << ',' << r.x_b << ','
           << r.edges_committed << ',' << r.a_rem << ',' << r.b_rem << '\n';
}

ExtremalPartition::SizeBounds ExtremalPartition::size_bounds() const {
    SizeBounds out;
    long long na = (long long)A.count(), nb = (long long)B.count();
    // |X| <= 18 sqrt(alpha) |side|  <=>  |X|^2 <= 324 alpha |side|^2
    Rational cut_x(324 * alpha.num, alpha.den);
    if (na > 0) {
        out.x_a = ratio_le_root((long long)X_A.count(), na, cut_x, 2);
        out.s_a = (__int128)S_A.count() * alpha.den <= (__int128)40 * alpha.num * na;
    }
    if (nb > 0) {
        out.x_b = ratio_le_root((long long)X_B.count(), nb, cut_x, 2);
        out.s_b = (__int128)S_B.count() * alpha.den <= (__int128)40 * alpha.num * nb;
    }
    return out;
}

long long ExtremalPartition::deg_pairs_B(const Hypergraph3 & H, int a) const {
    auto bs = B.to_vector();
    long long d = 0;
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j)
            if (H.has_edge(a, bs[i], bs[j])) ++d;
    return d;
}

long long ExtremalPartition::deg_B_cross(const Hypergraph3 & H, int b) const {
    auto bs = B.to_vector();
    auto as = A.to_vector();
    long long d = 0;
    for (int b2 : bs) {
        if (b2 == b) continue;
        for (int a : as)
            if (H.has_edge(b, b2, a)) ++d;
    }
    return d;
}

void ExtremalPartition::recompute_sets(const Hypergraph3 & H) {
    int n = H.n();
    X_A = VertexSet((std::size_t)n);
    X_B = VertexSet((std::size_t)n);
    S_A = VertexSet((std::size_t)n);
    S_B = VertexSet((std::size_t)n);
    long long nb = (long long)B.count(), na = (long long)A.count();
    long long full_pairs = binom2(nb);
    long long full_cross = na * (nb - 1);
    A.for_each([&](std::size_t a) {
        long long d = deg_pairs_B(H, (int)a);
        // d < (1 - sqrt(alpha)) full  <=>  full - d > sqrt(alpha) full
        if (full_pairs > 0 && ratio_gt_root(full_pairs - d, full_pairs, alpha, 2))
            X_A.set(a);
        if (full_pairs == 0 || ratio_lt_root(d, full_pairs, alpha, 3)) S_A.set(a);
    });
    B.for_each([&](std::size_t b) {
        long long d = deg_B_cross(H, (int)b);
        if (full_cross > 0 && ratio_gt_root(full_cross - d, full_cross, alpha, 2))
            X_B.set(b);
        if (full_cross == 0 || ratio_lt_root(d, full_cross, alpha, 3)) S_B.set(b);
    });
}

bool ExtremalPartition::sets_consistent(const Hypergraph3 & H) const {
    ExtremalPartition fresh = *this;
    fresh.recompute_sets(H);
    return fresh.X_A == X_A && fresh.X_B == X_B && fresh.S_A == S_A && fresh.S_B == S_B;
}

ExtremalPartition prepare_extremal_partition(const Hypergraph3 & H, const VertexSet & B0,
                                             const Rational & alpha,
                                             std::vector<StageRecord> * trace) {
    int n = H.n();
    if (n % 3 != 0) throw Error(Err::InvalidOrder, "need n in 3Z", {n});
    long long bsize = (long long)B0.count();
    // certificate: |B0| >= (2/3 - alpha) n and d3(B0) < alpha
    if (3 * bsize * alpha.den < (2 * alpha.den - 3 * alpha.num) * (long long)n)
        throw Error(Err::NotExtremal, "certificate set too small", {bsize});
    if (bsize < 3 || !(subset_density(H, B0) < alpha))
        throw Error(Err::NotExtremal, "certificate set too dense");

    ExtremalPartition P;
    P.alpha = alpha;
    P.B = B0;
    P.A = B0.complement();

    long long target_b = 2LL * n / 3;
    // shift extreme-degree vertices until |B| = 2n/3
    while ((long long)P.B.count() > target_b) {
        int pick = -1;
        long long pick_deg = -1;
        P.B.for_each([&](std::size_t b) {
            long long d = 0;
            auto bs = P.B.to_vector();
            for (std::size_t i = 0; i < bs.size(); ++i)
                for (std::size_t j = i + 1; j < bs.size(); ++j)
                    if (bs[i] != (int)b && bs[j] != (int)b && H.has_edge((int)b, bs[i], bs[j]))
                        ++d;
            if (d > pick_deg) { pick_deg = d; pick = (int)b; }
        });
        P.B.reset((std::size_t)pick);
        P.A.set((std::size_t)pick);
    }
    while ((long long)P.B.count() < target_b) {
        int pick = -1;
        long long pick_deg = -1;
        P.A.for_each([&](std::size_t a) {
            long long d = P.deg_pairs_B(H, (int)a);
            if (pick == -1 || d < pick_deg) { pick_deg = d; pick = (int)a; }
        });
        P.A.reset((std::size_t)pick);
        P.B.set((std::size_t)pick);
    }

    Rational six_alpha(6 * alpha.num, alpha.den);
    if (!(subset_density(H, P.B) < six_alpha))
        throw Error(Err::NotExtremal, "d3(B) >= 6 alpha after rebalancing");

    P.recompute_sets(H);
    record(trace, "prepare", P, 0);
    return P;
}

ExtremalPartition exchange_reduce(const ExtremalPartition & P0, const Hypergraph3 & H) {
    ExtremalPartition P = P0;
    while (P.S_A.any() && P.S_B.any()) {
        long long before = (long long)(P.S_A.count() + P.S_B.count());
        std::size_t a = P.S_A.find_first();
        std::size_t b = P.S_B.find_first();
        P.A.reset(a);
        P.B.set(a);
        P.B.reset(b);
        P.A.set(b);
        P.recompute_sets(H);
        if ((long long)(P.S_A.count() + P.S_B.count()) >= before) {
            // swap back; at desk scale the degree slack can be absent
            P.A.set(a);
            P.B.reset(a);
            P.B.set(b);
            P.A.reset(b);
            P.recompute_sets(H);
            break;
        }
    }
    return P;
}

std::pair<Matching, ExtremalPartition> eliminate_strongly_exceptional(
    const ExtremalPartition & P0, const Hypergraph3 & H, std::vector<StageRecord> * trace) {
    ExtremalPartition P = P0;
    int n = H.n();
    Matching M = Matching::empty(n);

    if (P.S_A.any() && P.S_B.any())
        throw Error(Err::GreedyFailed, "exchange did not empty one strongly exceptional side");

    if (P.S_B.any()) {
        auto sb = P.S_B.to_vector();
        VertexSet used((std::size_t)n);
        // one edge inside B through each strongly exceptional vertex
        for (int b : sb) {
            auto bs = P.B.to_vector();
            bool found = false;
            for (std::size_t i = 0; i < bs.size() && !found; ++i) {
                if (bs[i] == b || used.test((std::size_t)bs[i]) || P.S_B.test((std::size_t)bs[i]))
                    continue;
                for (std::size_t j = i + 1; j < bs.size() && !found; ++j) {
                    if (bs[j] == b || used.test((std::size_t)bs[j]) ||
                        P.S_B.test((std::size_t)bs[j]))
                        continue;
                    if (H.has_edge(b, bs[i], bs[j])) {
                        M.add({b, bs[i], bs[j]});
                        used.set((std::size_t)b);
                        used.set((std::size_t)bs[i]);
                        used.set((std::size_t)bs[j]);
                        found = true;
                    }
                }
            }
            if (!found)
                throw Error(Err::GreedyFailed, "no inside-B edge for strongly exceptional vertex",
                            {b});
        }
        // ratio repair: one non-exceptional B vertex plus two A vertices, per
        // covered strongly exceptional vertex
        for (std::size_t k = 0; k < sb.size(); ++k) {
            bool found = false;
            auto bs = P.B.to_vector();
            auto as = P.A.to_vector();
            for (std::size_t bi = 0; bi < bs.size() && !found; ++bi) {
                int b = bs[bi];
                if (used.test((std::size_t)b) || P.X_B.test((std::size_t)b)) continue;
                for (std::size_t i = 0; i < as.size() && !found; ++i) {
                    if (used.test((std::size_t)as[i])) continue;
                    for (std::size_t j = i + 1; j < as.size() && !found; ++j) {
                        if (used.test((std::size_t)as[j])) continue;
                        if (H.has_edge(b, as[i], as[j])) {
                            M.add({b, as[i], as[j]});
                            used.set((std::size_t)b);
                            used.set((std::size_t)as[i]);
                            used.set((std::size_t)as[j]);
                            found = true;
                        }
                    }
                }
            }
            if (!found)
                throw Error(Err::GreedyFailed, "no balancing {b,a,a'} edge available");
        }
        P.A = P.A.minus(used);
        P.B = P.B.minus(used);
    } else if (P.S_A.any()) {
        auto sa = P.S_A.to_vector();
        long long k = (long long)sa.size();
        // the inductive argument needs |B| to dominate |S_A|
        if ((long long)P.B.count() < 27 * k)
            throw Error(Err::GreedyFailed, "strongly exceptional side too large for induction",
                        {k});
        VertexSet R = P.B;
        for (int a : sa) R.set((std::size_t)a);

        // max-degree-vertex recursion: find a matching of size k in H|_R
        std::vector<Triple> found;
        std::function<bool(VertexSet, long long, std::vector<Triple> &)> solve =
            [&](VertexSet range, long long want, std::vector<Triple> & out) -> bool {
            if (want == 0) return true;
            auto verts = range.to_vector();
            // degrees within the range
            int vbest = -1;
            long long dbest = -1;
            for (int v : verts) {
                long long d = 0;
                for (std::size_t i = 0; i < verts.size(); ++i)
                    for (std::size_t j = i + 1; j < verts.size(); ++j)
                        if (verts[i] != v && verts[j] != v && H.has_edge(v, verts[i], verts[j]))
                            ++d;
                if (d > dbest) { dbest = d; vbest = v; }
            }
            if (vbest == -1 || dbest == 0) return false;
            VertexSet reduced = range;
            reduced.reset((std::size_t)vbest);
            std::vector<Triple> sub;
            if (!solve(reduced, want - 1, sub)) return false;
            VertexSet avail = range;
            for (const auto & t : sub)
                for (int v : t) avail.reset((std::size_t)v);
            // extend through the max-degree vertex
            auto rest = avail.to_vector();
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (rest[i] == vbest) continue;
                for (std::size_t j = i + 1; j < rest.size(); ++j) {
                    if (rest[j] == vbest) continue;
                    if (H.has_edge(vbest, rest[i], rest[j])) {
                        out = sub;
                        out.push_back({vbest, rest[i], rest[j]});
                        return true;
                    }
                }
            }
            return false;
        };
        std::vector<Triple> picked;
        if (!solve(R, k, picked))
            throw Error(Err::GreedyFailed, "inductive matching in S_A union B not found", {k});
        for (const auto & t : picked) M.add(t);

        // uncovered strongly exceptional vertices are exchangeable with B
        VertexSet used = M.covered;
        for (int a : sa) {
            P.A.reset((std::size_t)a);
            if (!used.test((std::size_t)a)) P.B.set((std::size_t)a);
        }
        P.B = P.B.minus(used);
        // the A side lost exactly |S_A| vertices; B absorbed the swaps
    }

    if (2 * P.A.count() != P.B.count())
        throw Error(Err::Internal, "strongly exceptional stage broke the 2:1 ratio");
    P.recompute_sets(H);
    record(trace, "strongly-exceptional", P, (long long)M.edges.size());
    return {M, P};
}

std::pair<Matching, ExtremalPartition> eliminate_exceptional(const ExtremalPartition & P0,
                                                             const Hypergraph3 & H,
                                                             std::vector<StageRecord> * trace) {
    ExtremalPartition P = P0;
    int n = H.n();
    Matching M = Matching::empty(n);
    if (P.S_A.any() || P.S_B.any())
        throw Error(Err::GreedyFailed, "strongly exceptional vertices remain");

    VertexSet used((std::size_t)n);
    auto xa = P.X_A.to_vector();
    for (int a : xa) {
        bool found = false;
        auto bs = P.B.to_vector();
        for (std::size_t i = 0; i < bs.size() && !found; ++i) {
            if (used.test((std::size_t)bs[i])) continue;
            for (std::size_t j = i + 1; j < bs.size() && !found; ++j) {
                if (used.test((std::size_t)bs[j])) continue;
                if (H.has_edge(a, bs[i], bs[j])) {
                    M.add({a, bs[i], bs[j]});
                    used.set((std::size_t)a);
                    used.set((std::size_t)bs[i]);
                    used.set((std::size_t)bs[j]);
                    found = true;
                }
            }
        }
        if (!found) throw Error(Err::GreedyFailed, "no {a,b,b'} edge for exceptional vertex", {a});
    }
    auto xb = P.X_B.to_vector();
    for (int b : xb) {
        if (used.test((std::size_t)b)) continue; // already covered above
        bool found = false;
        auto bs = P.B.to_vector();
        auto as = P.A.to_vector();
        for (std::size_t i = 0; i < bs.size() && !found; ++i) {
            if (bs[i] == b || used.test((std::size_t)bs[i])) continue;
            for (std::size_t j = 0; j < as.size() && !found; ++j) {
                if (used.test((std::size_t)as[j])) continue;
                if (H.has_edge(b, bs[i], as[j])) {
                    M.add({b, bs[i], as[j]});
                    used.set((std::size_t)b);
                    used.set((std::size_t)bs[i]);
                    used.set((std::size_t)as[j]);
                    found = true;
                }
            }
        }
        if (!found) throw Error(Err::GreedyFailed, "no {b,b',a} edge for exceptional vertex", {b});
    }
    P.A = P.A.minus(used);
    P.B = P.B.minus(used);
    if (2 * P.A.count() != P.B.count())
        throw Error(Err::Internal, "exceptional stage broke the 2:1 ratio");
    P.recompute_sets(H);
    record(trace, "exceptional", P, (long long)M.edges.size());
    return {M, P};
}

namespace {

// {b1, b2} is good when it makes edges with (1 - 40 alpha^(1/4)) |A''| of A''.
bool pair_is_good(const Hypergraph3 & H, const ExtremalPartition & P, int b1, int b2) {
    long long cnt = 0;
    long long asize = (long long)P.A.count();
    P.A.for_each([&](std::size_t a) { cnt += H.has_edge(b1, b2, (int)a) ? 1 : 0; });
    if (asize == 0) return false;
    // A'' - cnt <= 40 alpha^(1/4) |A''|  <=>  (gap/|A''|)^4 <= 40^4 alpha
    long long gap = asize - cnt;
    Rational rhs(2560000 * P.alpha.num, P.alpha.den); // 40^4 alpha
    return ratio_le_root(gap, asize, rhs, 4);
}

} // namespace

GoodPairSystem build_good_pairs(const ExtremalPartition & P, const Hypergraph3 & H,
                                std::uint64_t seed) {
    GoodPairSystem gps;
    auto bs = P.B.to_vector();
    gps.a_size = (long long)P.A.count();
    if (bs.size() != 2 * (std::size_t)gps.a_size)
        throw Error(Err::Internal, "good pairs need |B''| = 2|A''|");
    if (bs.empty()) return gps;

    long long half = (long long)bs.size() / 2;
    long long want = std::min(ceil_mul_root(Rational(100LL * 100 * 100 * 100 * P.alpha.num, P.alpha.den),
                                            4, (long long)bs.size()),
                              half);

    auto attempt = [&](std::uint64_t s) -> std::optional<GoodPairSystem> {
        GoodPairSystem out;
        out.a_size = gps.a_size;
        Rng rng(s);
        std::vector<int> unused = bs;
        long long tries = 8 * (long long)bs.size() + 16;
        while ((long long)out.p1.size() < want && unused.size() >= 2 && tries-- > 0) {
            std::size_t i = (std::size_t)rng.below(unused.size());
            std::size_t j = (std::size_t)rng.below(unused.size() - 1);
            if (j >= i) ++j;
            int b1 = unused[i], b2 = unused[j];
            if (!pair_is_good(H, P, b1, b2)) continue;
            if (b1 > b2) std::swap(b1, b2);
            out.p1.emplace_back(b1, b2);
            unused.erase(std::remove(unused.begin(), unused.end(), b1), unused.end());
            unused.erase(std::remove(unused.begin(), unused.end(), b2), unused.end());
        }
        // sampled-pair verification: every a reaches 3/4 of P1, every pair 3/4 of A''
        if (!out.p1.empty()) {
            Rational three_quarters(3, 4);
            bool ok = true;
            P.A.for_each([&](std::size_t a) {
                long long cnt = 0;
                for (auto & [b1, b2] : out.p1)
                    if (H.has_edge(b1, b2, (int)a)) ++cnt;
                if (!ratio_ge(cnt, (long long)out.p1.size(), three_quarters)) ok = false;
            });
            for (auto & [b1, b2] : out.p1) {
                long long cnt = 0;
                P.A.for_each([&](std::size_t a) { cnt += H.has_edge(b1, b2, (int)a) ? 1 : 0; });
                if (!ratio_ge(cnt, gps.a_size, three_quarters)) ok = false;
            }
            if (!ok) return std::nullopt;
        }

        // P2: perfect pairing of the remainder through the good-pair graph
        std::vector<int> rest = unused;
        if (!rest.empty()) {
            gr::Graph G = gr::Graph::empty((int)rest.size());
            for (std::size_t i = 0; i < rest.size(); ++i)
                for (std::size_t j = i + 1; j < rest.size(); ++j)
                    if (pair_is_good(H, P, rest[i], rest[j])) G.add_edge((int)i, (int)j);
            // Dirac-style check: min degree at least half the order
            if (2 * G.min_degree() < G.n)
                throw Error(Err::GoodPairGraphTooSparse,
                            "good-pair graph fails the half-order degree bound");
            auto pairing = gr::greedy_graph_matching(G);
            if (2 * pairing.size() != rest.size())
                throw Error(Err::GoodPairGraphTooSparse, "good-pair graph has no perfect pairing");
            for (auto & [i, j] : pairing) {
                int b1 = rest[(std::size_t)i], b2 = rest[(std::size_t)j];
                if (b1 > b2) std::swap(b1, b2);
                out.p2.emplace_back(b1, b2);
            }
        }
        return out;
    };

    auto first = attempt(seed);
    if (first) return *first;
    auto second = attempt(seed + 1); // one resample, then failure
    if (second) return *second;
    throw Error(Err::GoodPairGraphTooSparse, "sampled pair verification failed twice");
}

Matching hall_finish(const ExtremalPartition & P, const GoodPairSystem & GPS,
                     const Hypergraph3 & H) {
    auto as = P.A.to_vector();
    std::vector<std::pair<int, int>> pairs = GPS.p1;
    pairs.insert(pairs.end(), GPS.p2.begin(), GPS.p2.end());
    if (pairs.size() != as.size())
        throw Error(Err::Internal, "pair count must equal |A''|",
                    {(long long)pairs.size(), (long long)as.size()});
    if (pairs.empty()) return Matching::empty(H.n());

    gr::BipartiteGraph G = gr::BipartiteGraph::empty((int)as.size(), (int)pairs.size());
    for (std::size_t l = 0; l < as.size(); ++l)
        for (std::size_t r = 0; r < pairs.size(); ++r)
            if (H.has_edge(as[l], pairs[r].first, pairs[r].second)) G.add_edge((int)l, (int)r);
    auto match_r = gr::max_bipartite_matching(G);

    for (std::size_t r = 0; r < pairs.size(); ++r) {
        if (match_r[r] != -1) continue;
        // Hall witness: alternate from the unmatched pair vertex
        std::vector<char> seen_r(pairs.size(), 0), seen_l(as.size(), 0);
        std::vector<std::size_t> queue{r};
        seen_r[r] = 1;
        std::vector<long long> witness{(long long)r};
        while (!queue.empty()) {
            std::size_t cur = queue.back();
            queue.pop_back();
            Bitset col = G.column((int)cur);
            for (std::size_t l = col.find_first(); l != Bitset::npos; l = col.find_next(l + 1)) {
                if (seen_l[l]) continue;
                seen_l[l] = 1;
                for (std::size_t r2 = 0; r2 < pairs.size(); ++r2)
                    if (!seen_r[r2] && match_r[r2] == (int)l) {
                        seen_r[r2] = 1;
                        witness.push_back((long long)r2);
                        queue.push_back(r2);
                    }
            }
        }
        throw Error(Err::HallViolated, "pair set with too-small neighborhood", witness);
    }

    Matching M = Matching::empty(H.n());
    for (std::size_t r = 0; r < pairs.size(); ++r)
        M.add({as[(std::size_t)match_r[r]], pairs[r].first, pairs[r].second});
    return M;
}

Matching extremal_perfect_matching(const Hypergraph3 & H, const VertexSet & B0,
                                   const Rational & alpha, std::uint64_t seed,
                                   std::vector<StageRecord> * trace) {
    int n = H.n();
    auto prof = degree_profile(H);
    if (prof.delta1 < lab::threshold(n))
        throw Error(Err::BelowThreshold, "delta1 below the forcing threshold",
                    {prof.delta1, lab::threshold(n)});

    ExtremalPartition P = prepare_extremal_partition(H, B0, alpha, trace);
    P = exchange_reduce(P, H);
    auto [m_strong, P1] = eliminate_strongly_exceptional(P, H, trace);
    auto [m_exc, P2] = eliminate_exceptional(P1, H, trace);
    GoodPairSystem gps = build_good_pairs(P2, H, seed);
    Matching hall = hall_finish(P2, gps, H);

    Matching total = Matching::empty(n);
    for (const auto & t : m_strong.edges) total.add(t);
    for (const auto & t : m_exc.edges) total.add(t);
    for (const auto & t : hall.edges) total.add(t);
    auto verdict = verify_matching(H, total, true);
    if (!verdict.ok)
        throw Error(Err::Internal, "extremal pipeline produced invalid matching: " + verdict.reason);
    record(trace, "perfect", P2, (long long)total.edges.size());
    return total;
}

} // namespace hm3::extremal
