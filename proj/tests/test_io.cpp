#include "hm3/constructions.hpp"
#include "hm3/io.hpp"

#include <doctest.h>

using namespace hm3;

TEST_CASE("basic parse and canonical write") {
    auto H = io::parse_hypergraph("p hm3 3 1\ne 1 2 3\n");
    CHECK(H.n() == 3);
    CHECK(H.m() == 1);
    CHECK(H.has_edge(0, 1, 2));

    auto complete = Hypergraph3::complete(6);
    std::string text = io::write_hypergraph(complete);
    CHECK(text.substr(0, 11) == "p hm3 6 20\n");
    CHECK(io::write_hypergraph(io::parse_hypergraph(text)) == text);
}

TEST_CASE("parser accepts scrambled vertex order and comments") {
    auto H = io::parse_hypergraph("c comment\np hm3 5 2\ne 3 1 2\nc mid\ne 5 4 1\n");
    CHECK(H.m() == 2);
    CHECK(H.has_edge(0, 1, 2));
    CHECK(H.has_edge(0, 3, 4));
}

TEST_CASE("writer then parser is the identity on random instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto H = gen::random_3graph(10, 0.4, seed);
        auto round = io::parse_hypergraph(io::write_hypergraph(H));
        CHECK(round.edge_bits() == H.edge_bits());
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_line = [](const std::string & text, long long line) {
        try {
            (void)io::parse_hypergraph(text);
            FAIL("expected a parse error for: ", text);
        } catch (const Error & e) {
            CHECK(e.kind() == Err::ParseError);
            REQUIRE(!e.payload().empty());
            CHECK(e.payload()[0] == line);
        }
    };
    expect_line("p hm3 3 1\ne 1 2 2\n", 2);       // duplicate vertex
    expect_line("p hm3 3 1\ne 1 2 4\n", 2);       // out of range
    expect_line("p bad 3 1\ne 1 2 3\n", 1);       // malformed header
    expect_line("p hm3 4 2\ne 1 2 3\ne 1 2 3\n", 3); // duplicate edge
    expect_line("p hm3 4 2\ne 1 2 3\n", 2);       // count mismatch at EOF
    expect_line("e 1 2 3\n", 1);                  // edge before header
}

TEST_CASE("witness round trip") {
    Matching M = Matching::empty(9);
    M.add({0, 1, 2});
    M.add({3, 4, 5});
    M.add({6, 7, 8});
    std::string text = io::write_witness(M, true);
    CHECK(text.substr(0, 12) == "s PERFECT 3\n");
    auto parsed = io::parse_witness(text, 9);
    CHECK(parsed.perfect);
    CHECK(parsed.matching.edges == M.edges);

    std::string partial = io::write_witness(M, false);
    CHECK(partial.substr(0, 12) == "s MAXIMUM 3\n");
    CHECK_THROWS_AS((void)io::parse_witness("e 1 2 3\n", 9), Error);
}
