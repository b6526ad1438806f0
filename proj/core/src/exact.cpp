#include "hm3/exact.hpp"

#include <algorithm>
#include <bit>

namespace hm3::exact {

namespace {

struct EdgeRec {
    Triple t;
    std::uint32_t mask; // vertex mask, valid for n <= 32
};

std::vector<EdgeRec> edge_records_small(const Hypergraph3 & H) {
    std::vector<EdgeRec> out;
    out.reserve((std::size_t)H.m());
    H.for_each_edge([&](const Triple & t) {
        std::uint32_t m = (1u << t[0]) | (1u << t[1]) | (1u << t[2]);
        out.push_back({t, m});
    });
    return out;
}

} // namespace

DpResult max_matching_dp(const Hypergraph3 & H) {
    int n = H.n();
    if (n > 24) throw Error(Err::OrderTooLarge, "DP solver requires n <= 24", {n});

    auto edges = edge_records_small(H);
    std::vector<std::vector<int>> by_vertex((std::size_t)n);
    for (int i = 0; i < (int)edges.size(); ++i)
        for (int v : edges[(std::size_t)i].t) by_vertex[(std::size_t)v].push_back(i);

    std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<std::int8_t> f((std::size_t)full + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int v = std::countr_zero(mask);
        std::int8_t best = f[mask & (mask - 1)]; // skip v
        if (std::popcount(mask) >= 3) {
            for (int ei : by_vertex[(std::size_t)v]) {
                std::uint32_t em = edges[(std::size_t)ei].mask;
                if ((em & mask) == em) {
                    std::int8_t cand = (std::int8_t)(1 + f[mask & ~em]);
                    if (cand > best) best = cand;
                }
            }
        }
        f[mask] = best;
    }

    // Replay the table to reconstruct a witness.
    DpResult res;
    res.witness = Matching::empty(n);
    std::uint32_t mask = full;
    while (mask && f[mask] > 0) {
        int v = std::countr_zero(mask);
        if (f[mask & (mask - 1)] == f[mask]) {
            mask &= mask - 1;
            continue;
        }
        for (int ei : by_vertex[(std::size_t)v]) {
            std::uint32_t em = edges[(std::size_t)ei].mask;
            if ((em & mask) == em && 1 + f[mask & ~em] == f[mask]) {
                res.witness.add(edges[(std::size_t)ei].t);
                mask &= ~em;
                break;
            }
        }
    }
    res.size = f[full];
    if (res.size != res.witness.size())
        throw Error(Err::Internal, "DP witness replay mismatch");
    auto verdict = verify_matching(H, res.witness, false);
    if (!verdict.ok) throw Error(Err::Internal, "DP witness invalid: " + verdict.reason);
    return res;
}

namespace {

struct BranchSearch {
    int n;
    std::vector<Triple> tri;
    std::vector<Bitset> tri_mask;
    std::vector<std::vector<int>> by_vertex;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool complete = true;
    int best = -1;
    std::vector<Triple> best_stack;
    std::vector<Triple> stack;

    explicit BranchSearch(const Hypergraph3 & H, std::uint64_t budget_)
        : n(H.n()), by_vertex((std::size_t)H.n()), budget(budget_) {
        H.for_each_edge([&](const Triple & t) {
            Bitset m((std::size_t)n);
            for (int v : t) m.set((std::size_t)v);
            for (int v : t) by_vertex[(std::size_t)v].push_back((int)tri.size());
            tri.push_back(t);
            tri_mask.push_back(std::move(m));
        });
    }

    int alive_degree(int v, const Bitset & alive) const {
        int d = 0;
        for (int ei : by_vertex[(std::size_t)v])
            if (tri_mask[(std::size_t)ei].subset_of(alive)) ++d;
        return d;
    }

    // Greedy hitting set: disjoint edges use distinct hitters, so once every
    // edge inside `alive` is hit the number of picks bounds the matching
    // size.  Falls back to the trivial |alive|/3 bound when no better.
    int hitting_bound(const Bitset & alive) const {
        int trivial = (int)alive.count() / 3;
        std::vector<char> dead(tri.size(), 0);
        std::size_t live = 0;
        for (std::size_t i = 0; i < tri.size(); ++i) {
            if (tri_mask[i].subset_of(alive)) ++live;
            else dead[i] = 1;
        }
        int picks = 0;
        while (live > 0) {
            if (picks >= trivial) return trivial;
            int best_v = -1, best_d = -1;
            for (int v = 0; v < n; ++v) {
                if (!alive.test((std::size_t)v)) continue;
                int d = 0;
                for (int ei : by_vertex[(std::size_t)v])
                    if (!dead[(std::size_t)ei]) ++d;
                if (d > best_d) { best_d = d; best_v = v; }
            }
            if (best_d <= 0) return trivial;
            ++picks;
            for (int ei : by_vertex[(std::size_t)best_v])
                if (!dead[(std::size_t)ei]) { dead[(std::size_t)ei] = 1; --live; }
        }
        return picks;
    }

    void run(Bitset & alive) {
        if (++nodes > budget) { complete = false; return; }
        int cur = (int)stack.size();
        if (cur > best) { best = cur; best_stack = stack; }
        std::size_t alive_count = alive.count();
        if (alive_count < 3) return;
        if (cur + (int)alive_count / 3 <= best) return;
        if (cur + hitting_bound(alive) <= best) return;

        // fail-first: lowest remaining degree, ties by index
        int pick = -1, pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive.test((std::size_t)v)) continue;
            int d = alive_degree(v, alive);
            if (pick == -1 || d < pick_deg) { pick = v; pick_deg = d; }
            if (pick_deg == 0) break;
        }
        if (pick_deg == 0) {
            alive.reset((std::size_t)pick); // can never be matched: forced skip
            run(alive);
            alive.set((std::size_t)pick);
            return;
        }
        // matching branches first so deep matchings are found early
        for (int ei : by_vertex[(std::size_t)pick]) {
            if (!complete) return;
            const Bitset & em = tri_mask[(std::size_t)ei];
            if (!em.subset_of(alive)) continue;
            Bitset next = alive.minus(em);
            stack.push_back(tri[(std::size_t)ei]);
            run(next);
            stack.pop_back();
        }
        if (!complete) return;
        alive.reset((std::size_t)pick); // leave pick unmatched
        run(alive);
        alive.set((std::size_t)pick);
    }
};

} // namespace

BranchResult max_matching_branch(const Hypergraph3 & H, std::uint64_t budget) {
    BranchSearch search(H, budget);
    Bitset alive = Bitset::full((std::size_t)H.n());
    search.run(alive);
    BranchResult res;
    res.size = std::max(search.best, 0);
    res.exact = search.complete;
    res.nodes = search.nodes;
    res.witness = Matching::empty(H.n());
    for (const auto & t : search.best_stack) res.witness.add(t);
    auto verdict = verify_matching(H, res.witness, false);
    if (!verdict.ok) throw Error(Err::Internal, "branch witness invalid: " + verdict.reason);
    return res;
}

PmVerdict has_perfect_matching(const Hypergraph3 & H, std::uint64_t budget) {
    if (H.n() % 3 != 0)
        throw Error(Err::InvalidOrder, "perfect matching needs n divisible by 3", {H.n()});
    PmVerdict v;
    int want = H.n() / 3;
    if (H.n() <= 24) {
        auto dp = max_matching_dp(H);
        if (dp.size == want) {
            auto check = verify_matching(H, dp.witness, true);
            if (!check.ok) throw Error(Err::Internal, check.reason);
            v.status = PmStatus::Yes;
            v.witness = dp.witness;
        } else {
            v.status = PmStatus::No;
            v.note = "maximum matching " + std::to_string(dp.size);
        }
        return v;
    }
    auto br = max_matching_branch(H, budget);
    if (br.size == want) {
        auto check = verify_matching(H, br.witness, true);
        if (!check.ok) throw Error(Err::Internal, check.reason);
        v.status = PmStatus::Yes;
        v.witness = br.witness;
    } else if (br.exact) {
        v.status = PmStatus::No;
        v.note = "maximum matching " + std::to_string(br.size);
    } else {
        v.status = PmStatus::Undecided;
        v.note = "search budget exhausted at matching size " + std::to_string(br.size);
    }
    return v;
}

} // namespace hm3::exact
