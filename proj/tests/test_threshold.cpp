#include "hm3/constructions.hpp"
#include "hm3/exact.hpp"
#include "hm3/threshold_lab.hpp"

#include <doctest.h>

#include <sstream>

using namespace hm3;

TEST_CASE("threshold formula values") {
    CHECK(lab::threshold(9) == 14);
    CHECK(lab::threshold(6) == 5);
    CHECK(lab::threshold(3) == 1);
    CHECK(lab::threshold(12) == 28);
    CHECK_THROWS_AS((void)lab::threshold(10), Error);
}

TEST_CASE("threshold is strictly increasing on 3Z up to 300") {
    for (int n = 6; n + 3 <= 300; n += 3)
        CHECK(lab::threshold(n + 3) > lab::threshold(n));
}

TEST_CASE("tight construction sits one below the threshold") {
    for (int n : {6, 9, 12, 15}) {
        auto inst = gen::extremal_construction(n);
        CHECK(degree_profile(inst.H).delta1 == lab::threshold(n) - 1);
        CHECK(exact::has_perfect_matching(inst.H).status == exact::PmStatus::No);
    }
}

TEST_CASE("sampled evidence at full degree floor is all matched") {
    auto rep = lab::sampled_verify(9, binom2(8), 5, 0);
    CHECK(rep.examined == 5);
    CHECK(rep.pm_count == 5);
    CHECK(rep.counterexamples.empty());
    CHECK(rep.undecided == 0);
    std::ostringstream os;
    rep.write_csv(os);
    CHECK(os.str().find("9,28,sampled,5,5,0,") != std::string::npos);
}

TEST_CASE("sampled evidence at the n=9 threshold, small run") {
    auto rep = lab::sampled_verify(9, 14, 50, 1);
    CHECK(rep.examined == 50);
    CHECK(rep.undecided == 0);
    CHECK(rep.pm_count + (long long)rep.counterexamples.size() == 50);
    for (const auto & cex : rep.counterexamples) {
        CHECK(degree_profile(cex).delta1 >= 14);
        CHECK(exact::has_perfect_matching(cex).status == exact::PmStatus::No);
    }
}

TEST_CASE("sampled runs are worker-count independent") {
    auto one = lab::sampled_verify(9, 14, 40, 5, 1);
    auto two = lab::sampled_verify(9, 14, 40, 5, 2);
    CHECK(one.pm_count == two.pm_count);
    CHECK(one.counterexamples.size() == two.counterexamples.size());
}

TEST_CASE("exhaustive scan is worker-count independent") {
    auto one = lab::exhaustive_verify_n6(1);
    auto two = lab::exhaustive_verify_n6(2);
    CHECK(one.m1_exact == two.m1_exact);
    CHECK(one.verified_floor == two.verified_floor);
    CHECK(one.count_by_delta == two.count_by_delta);
    CHECK(one.nopm_by_delta == two.nopm_by_delta);
    REQUIRE(!one.counterexamples.empty());
    CHECK(one.counterexamples.front().edge_bits() == two.counterexamples.front().edge_bits());
}
