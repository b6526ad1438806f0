#include "hm3/threshold_lab.hpp"

#include "hm3/constructions.hpp"
#include "hm3/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <ostream>
#include <thread>

namespace hm3::lab {

long long threshold(int n) {
    if (n < 3 || n % 3 != 0)
        throw Error(Err::InvalidOrder, "threshold needs n in 3Z, n >= 3", {n});
    return binom2(n - 1) - binom2(2 * n / 3) + 1;
}

void ThresholdReport::write_csv(std::ostream & os, bool header) const {
    if (header) os << "n,tau,mode,examined,pm_count,counterexamples,runtime_ms\n";
    const char * mode_name = mode == Mode::Exhaustive ? "exhaustive" : "sampled";
    if (mode == Mode::Exhaustive) {
        // one row per tau: graphs with delta1 >= tau
        long long max_delta = (long long)count_by_delta.size() - 1;
        for (long long t = 0; t <= max_delta + 1; ++t) {
            long long exam = 0, nopm = 0;
            for (long long d = t; d <= max_delta; ++d) {
                exam += count_by_delta[(std::size_t)d];
                nopm += nopm_by_delta[(std::size_t)d];
            }
            os << n << ',' << t << ',' << mode_name << ',' << exam << ','
               << (exam - nopm) << ',' << nopm << ',' << runtime_ms << '\n';
        }
    } else {
        os << n << ',' << tau << ',' << mode_name << ',' << examined << ','
           << pm_count << ',' << counterexamples.size() << ',' << runtime_ms << '\n';
    }
}

namespace {

struct N6Tables {
    // triple vertex masks and per-vertex incidence masks over the 20 triples
    std::array<std::uint8_t, 20> tri_vmask{};
    std::array<std::uint32_t, 6> incident{};
    std::array<std::array<std::uint8_t, 10>, 6> tri_of_vertex{}; // edge indices
    std::array<std::uint8_t, 6> tri_count{};

    N6Tables() {
        for (long long r = 0; r < binom3(6); ++r) {
            Triple t = triple_unrank(r);
            std::uint8_t vm = 0;
            for (int v : t) {
                vm |= (std::uint8_t)(1u << v);
                incident[(std::size_t)v] |= (1u << r);
                tri_of_vertex[(std::size_t)v][tri_count[(std::size_t)v]++] = (std::uint8_t)r;
            }
            tri_vmask[(std::size_t)r] = vm;
        }
    }
};

const N6Tables & n6_tables() {
    static const N6Tables t;
    return t;
}

// Maximum matching of the graph given by `edge_mask`, by the same subset DP
// as max_matching_dp, specialized to 6 vertices.
int n6_max_matching(std::uint32_t edge_mask) {
    const auto & T = n6_tables();
    std::array<std::int8_t, 64> f{};
    for (std::uint32_t mask = 1; mask < 64; ++mask) {
        int v = std::countr_zero(mask);
        std::int8_t best = f[mask & (mask - 1)];
        if (std::popcount(mask) >= 3) {
            for (int k = 0; k < T.tri_count[(std::size_t)v]; ++k) {
                std::uint8_t r = T.tri_of_vertex[(std::size_t)v][(std::size_t)k];
                if (!(edge_mask & (1u << r))) continue;
                std::uint8_t vm = T.tri_vmask[(std::size_t)r];
                if ((vm & mask) == vm) {
                    std::int8_t cand = (std::int8_t)(1 + f[mask & ~vm]);
                    if (cand > best) best = cand;
                }
            }
        }
        f[mask] = best;
    }
    return f[63];
}

struct N6Partial {
    std::vector<long long> count_by_delta = std::vector<long long>(11, 0);
    std::vector<long long> nopm_by_delta = std::vector<long long>(11, 0);
    long long best_nopm_delta = -1;
    std::uint32_t best_nopm_mask = 0;

    void merge(const N6Partial & o) {
        for (std::size_t i = 0; i < count_by_delta.size(); ++i) {
            count_by_delta[i] += o.count_by_delta[i];
            nopm_by_delta[i] += o.nopm_by_delta[i];
        }
        if (o.best_nopm_delta > best_nopm_delta ||
            (o.best_nopm_delta == best_nopm_delta && o.best_nopm_mask < best_nopm_mask))
            { best_nopm_delta = o.best_nopm_delta; best_nopm_mask = o.best_nopm_mask; }
    }
};

N6Partial n6_scan_range(std::uint32_t lo, std::uint32_t hi) {
    const auto & T = n6_tables();
    N6Partial part;
    for (std::uint32_t mask = lo; mask < hi; ++mask) {
        int delta = 10;
        for (int v = 0; v < 6; ++v)
            delta = std::min(delta, std::popcount(mask & T.incident[(std::size_t)v]));
        part.count_by_delta[(std::size_t)delta] += 1;
        if (n6_max_matching(mask) < 2) {
            part.nopm_by_delta[(std::size_t)delta] += 1;
            if (delta > part.best_nopm_delta ||
                (delta == part.best_nopm_delta && mask < part.best_nopm_mask))
                { part.best_nopm_delta = delta; part.best_nopm_mask = mask; }
        }
    }
    return part;
}

} // namespace

ThresholdReport exhaustive_verify_n6(int workers) {
    auto t0 = std::chrono::steady_clock::now();
    ThresholdReport rep;
    rep.n = 6;
    rep.mode = ThresholdReport::Mode::Exhaustive;
    rep.formula_value = threshold(6);

    const std::uint32_t total = 1u << 20;
    N6Partial merged;
    if (workers <= 1) {
        merged = n6_scan_range(0, total);
    } else {
        // contiguous ranges; the merge is associative and commutative, so the
        // outcome does not depend on the worker count
        std::vector<N6Partial> parts((std::size_t)workers);
        std::vector<std::thread> threads;
        std::uint32_t chunk = total / (std::uint32_t)workers;
        for (int w = 0; w < workers; ++w) {
            std::uint32_t lo = chunk * (std::uint32_t)w;
            std::uint32_t hi = w == workers - 1 ? total : lo + chunk;
            threads.emplace_back([&parts, w, lo, hi] { parts[(std::size_t)w] = n6_scan_range(lo, hi); });
        }
        for (auto & th : threads) th.join();
        for (const auto & p : parts) merged.merge(p);
    }

    rep.count_by_delta = merged.count_by_delta;
    rep.nopm_by_delta = merged.nopm_by_delta;
    for (auto c : rep.count_by_delta) rep.examined += c;
    long long nopm_total = 0;
    for (auto c : rep.nopm_by_delta) nopm_total += c;
    rep.pm_count = rep.examined - nopm_total;
    rep.verified_floor = merged.best_nopm_delta;
    rep.verified_ceiling = merged.best_nopm_delta + 1;
    rep.m1_exact = rep.verified_ceiling;

    // Witness instance for the floor.
    {
        Bitset bits((std::size_t)binom3(6));
        for (long long r = 0; r < binom3(6); ++r)
            if (merged.best_nopm_mask & (1u << r)) bits.set((std::size_t)r);
        rep.counterexamples.push_back(Hypergraph3::from_edge_bits(6, std::move(bits)));
    }

    // The tight construction pins the floor from below: delta1 = 4, no PM,
    // hence m1(3,6) >= 5.
    {
        auto ext = gen::extremal_construction(6);
        auto prof = degree_profile(ext.H);
        auto pm = exact::has_perfect_matching(ext.H);
        if (prof.delta1 != 4 || pm.status != exact::PmStatus::No)
            throw Error(Err::Internal, "tight construction check failed at n=6");
        if (rep.m1_exact < 5)
            throw Error(Err::Internal, "enumeration contradicts the n=6 witness");
    }

    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

ThresholdReport sampled_verify(int n, long long tau, int samples, std::uint64_t seed,
                               int workers) {
    if (n < 3 || n % 3 != 0)
        throw Error(Err::InvalidOrder, "sampled_verify needs n in 3Z", {n});
    auto t0 = std::chrono::steady_clock::now();
    ThresholdReport rep;
    rep.n = n;
    rep.mode = ThresholdReport::Mode::Sampled;
    rep.formula_value = threshold(n);
    rep.tau = tau;
    rep.examined = samples;

    struct Part {
        long long pm = 0, undecided = 0;
        std::vector<Hypergraph3> counterexamples;
    };
    auto scan = [&](int lo, int hi) {
        Part part;
        for (int i = lo; i < hi; ++i) {
            Hypergraph3 H = gen::random_min_degree(n, tau, seed + (std::uint64_t)i);
            auto verdict = exact::has_perfect_matching(H);
            switch (verdict.status) {
            case exact::PmStatus::Yes: ++part.pm; break;
            case exact::PmStatus::Undecided: ++part.undecided; break;
            case exact::PmStatus::No: part.counterexamples.push_back(H); break;
            }
        }
        return part;
    };

    std::vector<Part> parts;
    if (workers <= 1) {
        parts.push_back(scan(0, samples));
    } else {
        parts.resize((std::size_t)workers);
        std::vector<std::thread> threads;
        int chunk = samples / workers;
        for (int w = 0; w < workers; ++w) {
            int lo = chunk * w;
            int hi = w == workers - 1 ? samples : lo + chunk;
            threads.emplace_back([&parts, &scan, w, lo, hi] { parts[(std::size_t)w] = scan(lo, hi); });
        }
        for (auto & th : threads) th.join();
    }
    for (auto & p : parts) {
        rep.pm_count += p.pm;
        rep.undecided += p.undecided;
        for (auto & cex : p.counterexamples) rep.counterexamples.push_back(cex);
    }
    if (!rep.counterexamples.empty()) {
        long long best = -1;
        for (const auto & cex : rep.counterexamples)
            best = std::max(best, degree_profile(cex).delta1);
        rep.verified_floor = best;
    }
    if (rep.counterexamples.empty() && rep.undecided == 0) rep.verified_ceiling = tau;
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

} // namespace hm3::lab
