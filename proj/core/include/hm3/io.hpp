#ifndef HM3_IO_HPP
#define HM3_IO_HPP

#include "hm3/hypergraph.hpp"

#include <iosfwd>
#include <string>

namespace hm3::io {

/// Text format: optional `c` comment lines, a `p hm3 <n> <m>` header, then
/// m lines `e <u> <v> <w>` with 1-indexed distinct vertices in any order.
/// Duplicate edges are rejected and m must match; every parse error carries
/// its line number.
Hypergraph3 parse_hypergraph(const std::string & text);
Hypergraph3 read_hypergraph(std::istream & is);

/// Canonical form: header, then edges by colex rank with ascending vertices.
/// write_hypergraph(parse_hypergraph(x)) is idempotent and the identity on
/// canonical input.
std::string write_hypergraph(const Hypergraph3 & H);

/// Witness format: `s PERFECT <k>` or `s MAXIMUM <k>` lead line, then k
/// `e u v w` lines (1-indexed).
std::string write_witness(const Matching & M, bool perfect);
struct ParsedWitness {
    Matching matching;
    bool perfect = false;
    int size = 0;
};
ParsedWitness parse_witness(const std::string & text, int n);

} // namespace hm3::io

#endif
