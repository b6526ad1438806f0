#ifndef HM3_CONSTRUCTIONS_HPP
#define HM3_CONSTRUCTIONS_HPP

#include "hm3/hypergraph.hpp"

#include <cstdint>
#include <string>

namespace hm3::gen {

/// Instance generator parameters; `seed` fully determines the output of the
/// random kinds.  All generators are pure functions of their argument list.
struct GeneratorSpec {
    enum class Kind { Extremal, ExtremalPlus, Random, MinDegreeRandom, PerturbedExtremal };
    Kind kind = Kind::Random;
    int n = 12;
    double p = 0.5;          // edge probability (random kinds)
    long long tau = 0;       // degree floor (min-degree kind)
    long long flips = 0;     // perturbation count
    std::uint64_t seed = 0;

    static Kind parse_kind(const std::string & s);
    std::string kind_name() const;
};

struct ExtremalInstance {
    Hypergraph3 H;
    VertexSet A; // the small side every edge must meet (trailing vertex block)
    VertexSet B;
};

/// The tight example: |A| = n/3 - 1, every 3-set meeting A is an edge.
/// delta1 = C(n-1,2) - C(2n/3,2), maximum matching n/3 - 1, no perfect
/// matching.  A is the trailing block {2n/3+1, ..., n-1}.
ExtremalInstance extremal_construction(int n);

/// Same shape with |A| = n/3; meets the degree threshold and has a perfect
/// matching (each A-vertex with two B-vertices).
ExtremalInstance extremal_plus_instance(int n);
Hypergraph3 extremal_plus(int n);

/// Each of the C(n,3) triples included independently with probability p.
Hypergraph3 random_3graph(int n, double p, std::uint64_t seed);

/// Random graph at density calibrated to tau, then each deficient vertex is
/// augmented with uniformly chosen missing incident triples until
/// delta1 >= tau.  Requires tau <= C(n-1,2).
Hypergraph3 random_min_degree(int n, long long tau, std::uint64_t seed);

/// extremal_plus(n) with `flips` seeded edge toggles on distinct triples,
/// so `flips` exactly bounds the Hamming distance from the base instance.
Hypergraph3 perturbed_extremal(int n, long long flips, std::uint64_t seed);

Hypergraph3 generate(const GeneratorSpec & spec);

} // namespace hm3::gen

#endif
