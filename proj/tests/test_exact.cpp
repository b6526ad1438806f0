#include "hm3/constructions.hpp"
#include "hm3/exact.hpp"
#include "hm3/rng.hpp"

#include <doctest.h>

using namespace hm3;

TEST_CASE("DP solver on the stated instances") {
    CHECK(exact::max_matching_dp(Hypergraph3::complete(6)).size == 2);
    CHECK(exact::max_matching_dp(gen::extremal_construction(9).H).size == 2);

    auto single = Hypergraph3::empty(3).with_edge(0, 1, 2);
    auto res = exact::max_matching_dp(single);
    CHECK(res.size == 1);
    CHECK(verify_matching(single, res.witness, true).ok);

    CHECK_THROWS_AS((void)exact::max_matching_dp(Hypergraph3::complete(27)), Error);
}

TEST_CASE("branch solver matches DP on seeded instances") {
    int checked = 0;
    for (int n : {6, 9, 12}) {
        for (int pi = 1; pi <= 9; pi += 2) {
            for (std::uint64_t s = 0; s < 12; ++s) {
                auto H = gen::random_3graph(n, 0.1 * pi, 7919 * (std::uint64_t)n + 131 * (std::uint64_t)pi + s);
                auto dp = exact::max_matching_dp(H);
                auto br = exact::max_matching_branch(H);
                REQUIRE(br.exact);
                REQUIRE(br.size == dp.size);
                ++checked;
            }
        }
    }
    CHECK(checked == 3 * 5 * 12);
}

TEST_CASE("branch solver on the complete graph and the tight construction") {
    auto complete = Hypergraph3::complete(30);
    auto res = exact::max_matching_branch(complete);
    CHECK(res.exact);
    CHECK(res.size == 10);

    // the A-side hitting bound certifies optimality without search
    auto ext = gen::extremal_construction(30);
    auto eres = exact::max_matching_branch(ext.H);
    CHECK(eres.exact);
    CHECK(eres.size == 9);
    CHECK(eres.nodes < 2000);
}

TEST_CASE("budget exhaustion degrades to a lower bound") {
    auto H = gen::random_3graph(12, 0.5, 3);
    auto full = exact::max_matching_branch(H);
    auto tiny = exact::max_matching_branch(H, 2);
    CHECK_FALSE(tiny.exact);
    CHECK(tiny.size <= full.size);
    CHECK(verify_matching(H, tiny.witness, false).ok);
}

TEST_CASE("perfect matching verdicts") {
    CHECK(exact::has_perfect_matching(gen::extremal_plus(9)).status == exact::PmStatus::Yes);
    auto no = exact::has_perfect_matching(gen::extremal_construction(9).H);
    CHECK(no.status == exact::PmStatus::No);
    CHECK(no.note.find("2") != std::string::npos);
    CHECK(exact::has_perfect_matching(Hypergraph3::empty(6)).status == exact::PmStatus::No);
    CHECK_THROWS_AS((void)exact::has_perfect_matching(Hypergraph3::complete(7)), Error);

    // above the DP range with a starved budget: Undecided, never "no"
    auto dense = gen::random_3graph(27, 0.12, 5);
    auto verdict = exact::has_perfect_matching(dense, 3);
    if (verdict.status != exact::PmStatus::Yes)
        CHECK(verdict.status == exact::PmStatus::Undecided);
}

TEST_CASE("adding an edge never shrinks the maximum matching") {
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        auto H = gen::random_3graph(9, 0.25, 5000 + (std::uint64_t)i);
        long long missing = binom3(9) - H.m();
        if (missing == 0) continue;
        long long skip = (long long)rng.below((std::uint64_t)missing);
        long long rank = -1;
        for (long long r = 0; r < binom3(9); ++r) {
            if (H.has_edge_rank(r)) continue;
            if (skip-- == 0) { rank = r; break; }
        }
        REQUIRE(rank >= 0);
        auto grown = H.with_toggled(rank);
        REQUIRE(exact::max_matching_dp(grown).size >= exact::max_matching_dp(H).size);
    }
}

TEST_CASE("every witness passes verification") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto H = gen::random_3graph(12, 0.4, 900 + s);
        auto dp = exact::max_matching_dp(H);
        CHECK(verify_matching(H, dp.witness, false).ok);
        auto br = exact::max_matching_branch(H);
        CHECK(verify_matching(H, br.witness, false).ok);
    }
}
