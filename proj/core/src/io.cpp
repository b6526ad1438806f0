#include "hm3/io.hpp"

#include <algorithm>
#include <sstream>

namespace hm3::io {

namespace {

[[noreturn]] void parse_fail(long long line, const std::string & what) {
    throw Error(Err::ParseError, what + " (line " + std::to_string(line) + ")", {line});
}

} // namespace

Hypergraph3 parse_hypergraph(const std::string & text) {
    std::istringstream is(text);
    return read_hypergraph(is);
}

Hypergraph3 read_hypergraph(std::istream & is) {
    std::string line;
    long long lineno = 0;
    long long n = -1, m = -1;
    long long seen = 0;
    Bitset bits;

    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue; // blank line
        if (tag == "c") continue;
        if (tag == "p") {
            if (n != -1) parse_fail(lineno, "duplicate header");
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "hm3")
                parse_fail(lineno, "malformed header, expected 'p hm3 <n> <m>'");
            if (n < 3) parse_fail(lineno, "vertex count must be >= 3");
            if (m < 0 || m > binom3(n)) parse_fail(lineno, "edge count out of range");
            bits = Bitset((std::size_t)binom3(n));
            continue;
        }
        if (tag == "e") {
            if (n == -1) parse_fail(lineno, "edge before header");
            long long u, v, w;
            if (!(ls >> u >> v >> w)) parse_fail(lineno, "malformed edge line");
            if (u < 1 || v < 1 || w < 1 || u > n || v > n || w > n)
                parse_fail(lineno, "vertex out of range");
            long long t[3] = {u - 1, v - 1, w - 1};
            std::sort(t, t + 3);
            if (t[0] == t[1] || t[1] == t[2])
                parse_fail(lineno, "duplicate vertex in edge");
            long long r = triple_rank((int)t[0], (int)t[1], (int)t[2]);
            if (bits.test((std::size_t)r)) parse_fail(lineno, "duplicate edge");
            bits.set((std::size_t)r);
            ++seen;
            continue;
        }
        parse_fail(lineno, "unknown line tag '" + tag + "'");
    }
    if (n == -1) parse_fail(lineno, "missing header");
    if (seen != m)
        parse_fail(lineno, "edge count mismatch: header says " + std::to_string(m) +
                               ", found " + std::to_string(seen));
    return Hypergraph3::from_edge_bits((int)n, std::move(bits));
}

std::string write_hypergraph(const Hypergraph3 & H) {
    std::ostringstream os;
    os << "p hm3 " << H.n() << ' ' << H.m() << '\n';
    H.for_each_edge([&](const Triple & t) {
        os << "e " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    });
    return os.str();
}

std::string write_witness(const Matching & M, bool perfect) {
    std::ostringstream os;
    os << "s " << (perfect ? "PERFECT" : "MAXIMUM") << ' ' << M.edges.size() << '\n';
    for (const auto & t : M.edges) {
        int s[3] = {t[0], t[1], t[2]};
        std::sort(s, s + 3);
        os << "e " << s[0] + 1 << ' ' << s[1] + 1 << ' ' << s[2] + 1 << '\n';
    }
    return os.str();
}

ParsedWitness parse_witness(const std::string & text, int n) {
    std::istringstream is(text);
    std::string line;
    long long lineno = 0;
    ParsedWitness out;
    out.matching = Matching::empty(n);
    bool have_s = false;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            if (!(ls >> kind >> out.size) || (kind != "PERFECT" && kind != "MAXIMUM"))
                parse_fail(lineno, "malformed witness lead line");
            out.perfect = kind == "PERFECT";
            have_s = true;
            continue;
        }
        if (tag == "e") {
            long long u, v, w;
            if (!(ls >> u >> v >> w)) parse_fail(lineno, "malformed edge line");
            if (u < 1 || v < 1 || w < 1 || u > n || v > n || w > n)
                parse_fail(lineno, "vertex out of range");
            out.matching.add({(int)u - 1, (int)v - 1, (int)w - 1});
            continue;
        }
        parse_fail(lineno, "unknown line tag '" + tag + "'");
    }
    if (!have_s) parse_fail(lineno, "missing 's' lead line");
    if ((int)out.matching.edges.size() != out.size)
        parse_fail(lineno, "witness size mismatch");
    return out;
}

} // namespace hm3::io
