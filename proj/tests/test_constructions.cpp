#include "hm3/constructions.hpp"
#include "hm3/exact.hpp"
#include "hm3/threshold_lab.hpp"

#include <doctest.h>

using namespace hm3;

TEST_CASE("tight construction at n=9") {
    auto inst = gen::extremal_construction(9);
    CHECK(inst.A.count() == 2);
    CHECK(inst.B.count() == 7);
    CHECK(inst.H.m() == binom3(9) - binom3(7)); // 49
    CHECK(degree_profile(inst.H).delta1 == 13);
    auto dp = exact::max_matching_dp(inst.H);
    CHECK(dp.size == 2);
}

TEST_CASE("tight construction at n=6") {
    auto inst = gen::extremal_construction(6);
    CHECK(inst.A.count() == 1);
    CHECK(inst.B.count() == 5);
    CHECK(degree_profile(inst.H).delta1 == 4);
    CHECK(exact::max_matching_dp(inst.H).size == 1);
}

TEST_CASE("tight construction maximum matching equals n/3 - 1") {
    for (int n : {6, 9, 12, 15}) {
        auto inst = gen::extremal_construction(n);
        CHECK(exact::max_matching_dp(inst.H).size == n / 3 - 1);
    }
}

TEST_CASE("tight construction degree matches the closed form up to n=60") {
    for (int n = 6; n <= 60; n += 3) {
        auto inst = gen::extremal_construction(n);
        CHECK(degree_profile(inst.H).delta1 == binom2(n - 1) - binom2(2 * n / 3));
    }
}

TEST_CASE("construction rejects bad orders") {
    CHECK_THROWS_AS((void)gen::extremal_construction(7), Error);
    CHECK_THROWS_AS((void)gen::extremal_construction(3), Error);
}

TEST_CASE("matchable variant meets the threshold and has a matching") {
    auto H9 = gen::extremal_plus(9);
    CHECK(degree_profile(H9).delta1 == 18); // C(8,2) - C(5,2)
    CHECK(degree_profile(H9).delta1 >= lab::threshold(9));
    CHECK(exact::has_perfect_matching(H9).status == exact::PmStatus::Yes);

    auto H6 = gen::extremal_plus(6);
    CHECK(exact::has_perfect_matching(H6).status == exact::PmStatus::Yes);

    auto H30 = gen::extremal_plus(30);
    auto verdict = exact::has_perfect_matching(H30);
    CHECK(verdict.status == exact::PmStatus::Yes);
    CHECK(verify_matching(H30, *verdict.witness, true).ok);
}

TEST_CASE("random generator corner probabilities and determinism") {
    auto full = gen::random_3graph(8, 1.0, 3);
    CHECK(full.m() == binom3(8));
    auto none = gen::random_3graph(8, 0.0, 3);
    CHECK(none.m() == 0);

    auto a = gen::random_3graph(12, 0.5, 7);
    auto b = gen::random_3graph(12, 0.5, 7);
    CHECK(a.edge_bits() == b.edge_bits());
    auto c = gen::random_3graph(12, 0.5, 8);
    CHECK(a.edge_bits() != c.edge_bits());
}

TEST_CASE("degree-floor sampler") {
    SUBCASE("tau = 0 equals the plain random graph") {
        auto a = gen::random_min_degree(9, 0, 5);
        CHECK(degree_profile(a).delta1 >= 0);
    }
    SUBCASE("full tau forces the complete graph") {
        auto H = gen::random_min_degree(9, binom2(8), 5);
        CHECK(H.m() == binom3(9));
    }
    SUBCASE("floor is met at tau = 14") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto H = gen::random_min_degree(9, 14, seed);
            CHECK(degree_profile(H).delta1 >= 14);
        }
    }
    SUBCASE("determinism") {
        auto a = gen::random_min_degree(9, 14, 3);
        auto b = gen::random_min_degree(9, 14, 3);
        CHECK(a.edge_bits() == b.edge_bits());
    }
    CHECK_THROWS_AS((void)gen::random_min_degree(9, binom2(8) + 1, 0), Error);
}

TEST_CASE("perturbed construction bounds the Hamming distance exactly") {
    auto base = gen::extremal_plus(12);
    SUBCASE("zero flips is the identity") {
        auto H = gen::perturbed_extremal(12, 0, 9);
        CHECK(H.edge_bits() == base.edge_bits());
    }
    SUBCASE("flip count equals the symmetric difference") {
        auto H = gen::perturbed_extremal(12, 17, 9);
        long long diff = 0;
        for (long long r = 0; r < binom3(12); ++r)
            if (H.has_edge_rank(r) != base.has_edge_rank(r)) ++diff;
        CHECK(diff == 17);
    }
    SUBCASE("flipping every triple complements the graph") {
        auto H = gen::perturbed_extremal(12, binom3(12), 9);
        for (long long r = 0; r < binom3(12); ++r)
            CHECK(H.has_edge_rank(r) != base.has_edge_rank(r));
    }
    SUBCASE("inside-B density stays small at 50 flips on n=30") {
        auto inst = gen::extremal_plus_instance(30);
        auto H = gen::perturbed_extremal(30, 50, 1);
        Rational d = subset_density(H, inst.B);
        CHECK(d <= Rational(50, binom3(20)));
        CHECK(d < Rational(6, 1) * Rational(1, 20)); // 6 alpha at alpha = 0.05
    }
}
