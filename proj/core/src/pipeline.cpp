#include "hm3/pipeline.hpp"

#include "hm3/rng.hpp"
#include "hm3/threshold_lab.hpp"

#include <algorithm>

namespace hm3::pipeline {

namespace {

// Grow a cover-engine certificate to the whole-instance size bound by
// adding the vertices with the fewest edges into pairs of B.
std::optional<VertexSet> widen_certificate(const Hypergraph3 & H, VertexSet B,
                                           const Rational & alpha) {
    int n = H.n();
    auto big_enough = [&](const VertexSet & S) {
        return 3 * (long long)S.count() * alpha.den >=
               (2 * alpha.den - 3 * alpha.num) * (long long)n;
    };
    while (!big_enough(B)) {
        int pick = -1;
        long long pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (B.test((std::size_t)v)) continue;
            long long d = 0;
            auto bs = B.to_vector();
            for (std::size_t i = 0; i < bs.size(); ++i)
                for (std::size_t j = i + 1; j < bs.size(); ++j)
                    if (H.has_edge(v, bs[i], bs[j])) ++d;
            if (pick == -1 || d < pick_deg) { pick = v; pick_deg = d; }
        }
        if (pick == -1) return std::nullopt;
        B.set((std::size_t)pick);
    }
    if (B.count() < 3 || !(subset_density(H, B) < alpha)) return std::nullopt;
    return B;
}

} // namespace

PipelineResult perfect_matching(const Hypergraph3 & H, const PipelineConfig & cfg) {
    int n = H.n();
    if (n % 3 != 0) throw Error(Err::InvalidOrder, "perfect matching needs n in 3Z", {n});

    PipelineResult res;
    auto fallback = [&](const std::string & stage, const std::string & detail) {
        res.failed_stage = stage;
        res.detail = detail;
        if (!cfg.fallback_enabled(n)) {
            res.status = PipelineResult::Status::Undecided;
            return res;
        }
        res.used_exact_fallback = true;
        auto verdict = exact::has_perfect_matching(H, cfg.branch_budget);
        switch (verdict.status) {
        case exact::PmStatus::Yes:
            res.status = PipelineResult::Status::Found;
            res.matching = verdict.witness;
            break;
        case exact::PmStatus::No:
            res.status = PipelineResult::Status::NoPerfect;
            res.detail += (res.detail.empty() ? "" : "; ") + verdict.note;
            break;
        case exact::PmStatus::Undecided:
            res.status = PipelineResult::Status::Undecided;
            res.detail += (res.detail.empty() ? "" : "; ") + verdict.note;
            break;
        }
        return res;
    };

    // absorbing stage
    cover::EngineParams absorb_params;
    absorb_params.eta = cfg.absorb_eta();
    absorb_params.alpha = cfg.alpha;
    absorb_params.seed = cfg.seed;
    // |M| <= ceil(alpha^(3/2) n): eta_abs^3 = alpha^(3/2)
    absorb_params.absorber_cap = (int)std::max<long long>(
        1, ceil_mul(cfg.effective_eta(), n));

    cover::AbsorbingMatching AM;
    try {
        AM = cover::build_absorbing_matching(H, absorb_params);
    } catch (const Error & e) {
        return fallback("absorbing", e.what());
    }

    // cover stage on the remainder
    cover::EngineParams cover_params;
    cover_params.eta = cfg.effective_eta();
    cover_params.alpha = cfg.alpha;
    cover_params.t = cfg.t;
    cover_params.seed = cfg.seed;
    cover_params.max_iterations = cfg.max_iterations;
    VertexSet remainder = H.all_vertices().minus(AM.M.covered);
    cover::CoverOutcome outcome;
    try {
        outcome = cover::almost_perfect_matching(H, cover_params, remainder);
    } catch (const Error & e) {
        return fallback("cover", e.what());
    }
    res.cover_trace = outcome.trace;

    if (outcome.kind == cover::CoverOutcome::Kind::Extremal) {
        // the extremal matcher works on the whole instance
        auto B = widen_certificate(H, *outcome.extremal_set, cfg.alpha);
        if (!B) return fallback("extremal-certificate", "certificate did not widen");
        try {
            Matching pm = extremal::extremal_perfect_matching(H, *B, cfg.alpha, cfg.seed,
                                                              &res.stage_trace);
            res.status = PipelineResult::Status::Found;
            res.matching = pm;
            return res;
        } catch (const Error & e) {
            return fallback("extremal", e.what());
        }
    }

    // non-extremal path: absorb whatever the cover left uncovered
    VertexSet W = outcome.uncovered;
    if (3 * (long long)AM.M.edges.size() < (long long)W.count())
        return fallback("absorb-capacity",
                        "leftover " + std::to_string(W.count()) + " exceeds absorber capacity");

    auto ws = W.to_vector();
    Rng shuffler(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int attempt = 0; attempt < 24; ++attempt) {
        try {
            VertexSet Wset = Bitset::of((std::size_t)n, ws);
            Matching full = cover::absorb_leftover(H, AM, Wset, outcome.matching);
            auto verdict = verify_matching(H, full, true);
            if (!verdict.ok)
                return fallback("absorb", "absorbed matching not perfect: " + verdict.reason);
            res.status = PipelineResult::Status::Found;
            res.matching = full;
            return res;
        } catch (const Error & e) {
            if (e.kind() != Err::AbsorptionFailed)
                return fallback("absorb", e.what());
            // retry with another deterministic partition of W into 3-sets
            for (std::size_t i = ws.size(); i > 1; --i)
                std::swap(ws[i - 1], ws[(std::size_t)shuffler.below(i)]);
        }
    }
    return fallback("absorb", "no absorbable partition of the leftover found");
}

} // namespace hm3::pipeline
