#include "hm3/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hm3::gr {

CompleteBipartite pigeonhole_complete_bipartite(const BipartiteGraph & G, const Rational & eta) {
    if (G.nl < 1 || G.nr < 1)
        throw Error(Err::InvalidArgument, "pigeonhole extraction on empty side");
    if (!ratio_ge(G.m, (long long)G.nl * G.nr, eta))
        throw Error(Err::DensityTooLow, "bipartite density below eta");

    // B1 = right vertices with degree >= eta|L|/2
    std::map<Bitset, std::vector<int>> buckets;
    for (int r = 0; r < G.nr; ++r) {
        Bitset col = G.column(r);
        if (ratio_ge(2 * (long long)col.count(), G.nl, eta))
            buckets[col].push_back(r);
    }
    if (buckets.empty())
        throw Error(Err::Internal, "pigeonhole: B1 empty despite density precondition");

    const std::pair<const Bitset, std::vector<int>> * best = nullptr;
    for (const auto & kv : buckets)
        if (!best || kv.second.size() > best->second.size()) best = &kv;

    CompleteBipartite out;
    out.left = best->first.to_vector();
    out.right = best->second;
    return out;
}

Bitset min_degree_subgraph(const Graph & G) {
    Bitset alive = Bitset::full((std::size_t)G.n);
    if (G.m == 0) {
        Bitset single((std::size_t)G.n);
        if (G.n > 0) single.set(0);
        return single;
    }
    // delete any vertex of alive-degree < m/n (original m, n)
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < G.n; ++v) {
            if (!alive.test((std::size_t)v)) continue;
            long long d = (long long)(G.adj[(std::size_t)v] & alive).count();
            if (d * G.n < G.m) {
                alive.reset((std::size_t)v);
                changed = true;
            }
        }
    }
    if (alive.none())
        throw Error(Err::Internal, "min_degree_subgraph deleted everything");
    return alive;
}

std::vector<std::pair<int, int>> greedy_graph_matching(const Graph & G) {
    std::vector<int> mate((std::size_t)G.n, -1);
    auto add = [&](int u, int v) { mate[(std::size_t)u] = v; mate[(std::size_t)v] = u; };

    // greedy maximal
    for (int u = 0; u < G.n; ++u) {
        if (mate[(std::size_t)u] != -1) continue;
        for (int v = u + 1; v < G.n; ++v)
            if (mate[(std::size_t)v] == -1 && G.has_edge(u, v)) { add(u, v); break; }
    }
    // length-3 augmentations: unmatched u, v with u~x, y~v for a matched
    // edge (x,y) lift the matching by one
    bool progress = true;
    while (progress) {
        progress = false;
        for (int u = 0; u < G.n && !progress; ++u) {
            if (mate[(std::size_t)u] != -1) continue;
            for (int v = u + 1; v < G.n && !progress; ++v) {
                if (mate[(std::size_t)v] != -1) continue;
                if (G.has_edge(u, v)) { add(u, v); progress = true; break; }
                for (int x = 0; x < G.n; ++x) {
                    int y = mate[(std::size_t)x];
                    if (y == -1 || y < x) continue;
                    if (G.has_edge(u, x) && G.has_edge(y, v)) {
                        add(u, x); add(y, v);
                        progress = true;
                        break;
                    }
                    if (G.has_edge(u, y) && G.has_edge(x, v)) {
                        add(u, y); add(x, v);
                        progress = true;
                        break;
                    }
                }
            }
        }
    }
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < G.n; ++v)
        if (mate[(std::size_t)v] > v) out.emplace_back(v, mate[(std::size_t)v]);
    return out;
}

namespace {

// Lexicographic s-subset enumeration with a callback; returns true when the
// callback accepts.
bool for_each_subset(int n, int s, const std::function<bool(const std::vector<int> &)> & fn) {
    std::vector<int> idx((std::size_t)s);
    for (int i = 0; i < s; ++i) idx[(std::size_t)i] = i;
    if (s > n) return false;
    while (true) {
        if (fn(idx)) return true;
        int i = s - 1;
        while (i >= 0 && idx[(std::size_t)i] == n - s + i) --i;
        if (i < 0) return false;
        ++idx[(std::size_t)i];
        for (int j = i + 1; j < s; ++j) idx[(std::size_t)j] = idx[(std::size_t)j - 1] + 1;
    }
}

} // namespace

std::optional<CompleteBipartite> find_biclique_bipartite(const BipartiteGraph & G, int s) {
    if (s < 1) throw Error(Err::InvalidArgument, "biclique size must be >= 1");
    std::optional<CompleteBipartite> found;
    for_each_subset(G.nl, s, [&](const std::vector<int> & left) {
        Bitset common = Bitset::full((std::size_t)G.nr);
        for (int l : left) common = common & G.row[(std::size_t)l];
        if ((int)common.count() >= s) {
            CompleteBipartite cb;
            cb.left = left;
            auto rs = common.to_vector();
            cb.right.assign(rs.begin(), rs.begin() + s);
            found = cb;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<CompleteBipartite> find_biclique_general(const Graph & G, int s) {
    if (s < 1) throw Error(Err::InvalidArgument, "biclique size must be >= 1");
    std::optional<CompleteBipartite> found;
    for_each_subset(G.n, s, [&](const std::vector<int> & side) {
        Bitset common = Bitset::full((std::size_t)G.n);
        for (int v : side) common = common & G.adj[(std::size_t)v];
        for (int v : side) common.reset((std::size_t)v);
        if ((int)common.count() >= s) {
            CompleteBipartite cb;
            cb.left = side;
            auto rs = common.to_vector();
            cb.right.assign(rs.begin(), rs.begin() + s);
            found = cb;
            return true;
        }
        return false;
    });
    return found;
}

std::vector<int> max_bipartite_matching(const BipartiteGraph & G) {
    std::vector<int> match_l((std::size_t)G.nl, -1), match_r((std::size_t)G.nr, -1);
    std::vector<char> visited;

    std::function<bool(int)> try_kuhn = [&](int l) -> bool {
        for (std::size_t r = G.row[(std::size_t)l].find_first(); r != Bitset::npos;
             r = G.row[(std::size_t)l].find_next(r + 1)) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (match_r[r] == -1 || try_kuhn(match_r[r])) {
                match_r[r] = l;
                match_l[(std::size_t)l] = (int)r;
                return true;
            }
        }
        return false;
    };

    for (int l = 0; l < G.nl; ++l) {
        visited.assign((std::size_t)G.nr, 0);
        try_kuhn(l);
    }
    return match_r;
}

} // namespace hm3::gr
