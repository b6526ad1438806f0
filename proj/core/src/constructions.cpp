#include "hm3/constructions.hpp"

#include "hm3/rng.hpp"

#include <algorithm>

namespace hm3::gen {

GeneratorSpec::Kind GeneratorSpec::parse_kind(const std::string & s) {
    if (s == "extremal") return Kind::Extremal;
    if (s == "extremal-plus") return Kind::ExtremalPlus;
    if (s == "random") return Kind::Random;
    if (s == "min-degree-random") return Kind::MinDegreeRandom;
    if (s == "perturbed-extremal") return Kind::PerturbedExtremal;
    throw Error(Err::InvalidArgument, "unknown generator kind: " + s);
}

std::string GeneratorSpec::kind_name() const {
    switch (kind) {
    case Kind::Extremal: return "extremal";
    case Kind::ExtremalPlus: return "extremal-plus";
    case Kind::Random: return "random";
    case Kind::MinDegreeRandom: return "min-degree-random";
    case Kind::PerturbedExtremal: return "perturbed-extremal";
    }
    return "?";
}

namespace {

// All 3-sets meeting the trailing block {n-a, ..., n-1}.
ExtremalInstance meet_a_construction(int n, int a_size) {
    Bitset bits((std::size_t)binom3(n));
    int b_size = n - a_size;
    for (long long r = 0; r < binom3(n); ++r) {
        Triple t = triple_unrank(r);
        if (t[2] >= b_size) bits.set((std::size_t)r); // max vertex in A suffices
    }
    VertexSet A((std::size_t)n), B((std::size_t)n);
    for (int v = 0; v < n; ++v) (v >= b_size ? A : B).set((std::size_t)v);
    return ExtremalInstance{Hypergraph3::from_edge_bits(n, std::move(bits)), A, B};
}

void require_order(int n) {
    if (n < 6 || n % 3 != 0)
        throw Error(Err::InvalidOrder, "need n >= 6 with n divisible by 3", {n});
}

} // namespace

ExtremalInstance extremal_construction(int n) {
    require_order(n);
    return meet_a_construction(n, n / 3 - 1);
}

ExtremalInstance extremal_plus_instance(int n) {
    require_order(n);
    return meet_a_construction(n, n / 3);
}

Hypergraph3 extremal_plus(int n) { return extremal_plus_instance(n).H; }

Hypergraph3 random_3graph(int n, double p, std::uint64_t seed) {
    if (n < 3) throw Error(Err::InvalidOrder, "need n >= 3", {n});
    if (p < 0.0 || p > 1.0) throw Error(Err::InvalidArgument, "need 0 <= p <= 1");
    Rng rng(seed);
    Bitset bits((std::size_t)binom3(n));
    for (long long r = 0; r < binom3(n); ++r)
        if (rng.bernoulli(p)) bits.set((std::size_t)r);
    return Hypergraph3::from_edge_bits(n, std::move(bits));
}

Hypergraph3 random_min_degree(int n, long long tau, std::uint64_t seed) {
    if (n < 3) throw Error(Err::InvalidOrder, "need n >= 3", {n});
    if (tau > binom2(n - 1))
        throw Error(Err::InvalidArgument, "tau exceeds C(n-1,2)", {tau});
    Rng rng(seed);
    double p0 = tau <= 0 ? 0.0 : double(tau) / double(binom2(n - 1));
    Bitset bits((std::size_t)binom3(n));
    std::vector<long long> deg((std::size_t)n, 0);
    for (long long r = 0; r < binom3(n); ++r)
        if (rng.bernoulli(p0)) {
            bits.set((std::size_t)r);
            for (int v : triple_unrank(r)) ++deg[(std::size_t)v];
        }
    // Augment deficient vertices with uniformly chosen missing incident triples.
    for (int v = 0; v < n; ++v) {
        while (deg[(std::size_t)v] < tau) {
            std::vector<long long> missing;
            for (int b = 0; b < n; ++b) {
                if (b == v) continue;
                for (int c = b + 1; c < n; ++c) {
                    if (c == v) continue;
                    int t[3] = {v, b, c};
                    std::sort(t, t + 3);
                    long long r = triple_rank(t[0], t[1], t[2]);
                    if (!bits.test((std::size_t)r)) missing.push_back(r);
                }
            }
            long long need = tau - deg[(std::size_t)v];
            for (long long i = 0; i < need && !missing.empty(); ++i) {
                std::size_t k = (std::size_t)rng.below(missing.size());
                long long r = missing[k];
                missing.erase(missing.begin() + (long long)k);
                bits.set((std::size_t)r);
                for (int u : triple_unrank(r)) ++deg[(std::size_t)u];
            }
        }
    }
    return Hypergraph3::from_edge_bits(n, std::move(bits));
}

Hypergraph3 perturbed_extremal(int n, long long flips, std::uint64_t seed) {
    if (flips > binom3(n))
        throw Error(Err::InvalidArgument, "flips exceeds C(n,3)", {flips});
    Hypergraph3 base = extremal_plus(n);
    Bitset bits = base.edge_bits();
    Rng rng(seed);
    // Sample distinct ranks without replacement so `flips` bounds the
    // Hamming distance exactly.
    std::vector<bool> used((std::size_t)binom3(n), false);
    for (long long i = 0; i < flips; ++i) {
        long long r;
        do { r = (long long)rng.below((std::uint64_t)binom3(n)); } while (used[(std::size_t)r]);
        used[(std::size_t)r] = true;
        bits.flip((std::size_t)r);
    }
    return Hypergraph3::from_edge_bits(n, std::move(bits));
}

Hypergraph3 generate(const GeneratorSpec & s) {
    switch (s.kind) {
    case GeneratorSpec::Kind::Extremal: return extremal_construction(s.n).H;
    case GeneratorSpec::Kind::ExtremalPlus: return extremal_plus(s.n);
    case GeneratorSpec::Kind::Random: return random_3graph(s.n, s.p, s.seed);
    case GeneratorSpec::Kind::MinDegreeRandom: return random_min_degree(s.n, s.tau, s.seed);
    case GeneratorSpec::Kind::PerturbedExtremal: return perturbed_extremal(s.n, s.flips, s.seed);
    }
    throw Error(Err::Internal, "unreachable");
}

} // namespace hm3::gen
