#include "hm3/constructions.hpp"
#include "hm3/cover.hpp"
#include "hm3/exact.hpp"
#include "hm3/io.hpp"
#include "hm3/pipeline.hpp"
#include "hm3/threshold_lab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;        // success / perfect matching
constexpr int kExitNoPm = 1;      // verified no perfect matching / rejection
constexpr int kExitUndecided = 2; // undecided or stage failure
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::string slurp(const std::string & path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw hm3::Error(hm3::Err::ParseError, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void spill(const std::string & path, const std::string & text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw hm3::Error(hm3::Err::ParseError, "cannot open " + path + " for writing");
    f << text;
}

int cmd_gen(const hm3::gen::GeneratorSpec & spec, const std::string & out) {
    hm3::Hypergraph3 H = hm3::gen::generate(spec);
    spill(out, hm3::io::write_hypergraph(H));
    return kExitOk;
}

int cmd_solve(const std::string & in, const std::string & witness_out,
              std::uint64_t budget) {
    hm3::Hypergraph3 H = hm3::io::parse_hypergraph(slurp(in));
    if (H.n() % 3 != 0)
        throw hm3::Error(hm3::Err::InvalidOrder, "perfect matching needs n in 3Z", {H.n()});
    auto verdict = hm3::exact::has_perfect_matching(H, budget);
    switch (verdict.status) {
    case hm3::exact::PmStatus::Yes:
        std::cout << "perfect matching of size " << verdict.witness->size() << "\n";
        if (!witness_out.empty())
            spill(witness_out, hm3::io::write_witness(*verdict.witness, true));
        return kExitOk;
    case hm3::exact::PmStatus::No: {
        std::cout << "no perfect matching: " << verdict.note << "\n";
        if (!witness_out.empty()) {
            auto best = H.n() <= 24 ? hm3::exact::max_matching_dp(H).witness
                                    : hm3::exact::max_matching_branch(H, budget).witness;
            spill(witness_out, hm3::io::write_witness(best, false));
        }
        return kExitNoPm;
    }
    case hm3::exact::PmStatus::Undecided:
        std::cout << "undecided: " << verdict.note << "\n";
        return kExitUndecided;
    }
    return kExitUndecided;
}

int cmd_verify(const std::string & graph_in, const std::string & witness_in) {
    hm3::Hypergraph3 H = hm3::io::parse_hypergraph(slurp(graph_in));
    auto w = hm3::io::parse_witness(slurp(witness_in), H.n());
    auto verdict = hm3::verify_matching(H, w.matching, w.perfect);
    if (verdict.ok) {
        std::cout << "valid " << (w.perfect ? "perfect " : "") << "matching of size "
                  << w.matching.size() << "\n";
        return kExitOk;
    }
    std::cout << "invalid: " << verdict.reason << "\n";
    return kExitNoPm;
}

int cmd_enumerate_n6(int workers, const std::string & csv_out) {
    auto rep = hm3::lab::exhaustive_verify_n6(workers);
    std::cout << "m1(3,6) = " << rep.m1_exact << " (threshold formula gives "
              << rep.formula_value << ", "
              << (rep.m1_exact == rep.formula_value ? "equal" : "not equal")
              << " at this order)\n";
    std::cout << "floor witness: delta1 = " << rep.verified_floor
              << " without perfect matching; examined " << rep.examined << " graphs, "
              << rep.pm_count << " matched\n";
    if (!csv_out.empty()) {
        std::ostringstream os;
        rep.write_csv(os);
        spill(csv_out, os.str());
    }
    return kExitOk;
}

int cmd_sample(int n, long long tau, int count, std::uint64_t seed, int workers,
               const std::string & csv_out, const std::string & save_dir) {
    auto rep = hm3::lab::sampled_verify(n, tau, count, seed, workers);
    std::cout << "n=" << n << " tau=" << tau << ": " << rep.pm_count << "/" << rep.examined
              << " matched, " << rep.counterexamples.size() << " counterexamples, "
              << rep.undecided << " undecided (sampled evidence, not an exhaustive proof)\n";
    for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
        std::string path = save_dir + "/counterexample_n" + std::to_string(n) + "_tau" +
                           std::to_string(tau) + "_" + std::to_string(i) + ".hm3";
        spill(path, hm3::io::write_hypergraph(rep.counterexamples[i]));
        std::cout << "counterexample persisted: " << path << "\n";
    }
    if (!csv_out.empty()) {
        std::ostringstream os;
        rep.write_csv(os);
        spill(csv_out, os.str());
    }
    return rep.counterexamples.empty() ? kExitOk : kExitNoPm;
}

int cmd_pipeline(const std::string & in, const hm3::pipeline::PipelineConfig & cfg,
                 const std::string & witness_out, const std::string & trace_cover,
                 const std::string & trace_stages) {
    hm3::Hypergraph3 H = hm3::io::parse_hypergraph(slurp(in));
    auto res = hm3::pipeline::perfect_matching(H, cfg);
    if (!trace_cover.empty()) {
        std::ostringstream os;
        hm3::cover::write_trace_csv(os, res.cover_trace);
        spill(trace_cover, os.str());
    }
    if (!trace_stages.empty()) {
        std::ostringstream os;
        hm3::extremal::write_stage_csv(os, res.stage_trace);
        spill(trace_stages, os.str());
    }
    switch (res.status) {
    case hm3::pipeline::PipelineResult::Status::Found:
        std::cout << "perfect matching of size " << res.matching->size()
                  << (res.used_exact_fallback ? " (exact fallback)" : "") << "\n";
        if (!witness_out.empty())
            spill(witness_out, hm3::io::write_witness(*res.matching, true));
        return kExitOk;
    case hm3::pipeline::PipelineResult::Status::NoPerfect:
        std::cout << "no perfect matching (stage " << res.failed_stage << "; " << res.detail
                  << ")\n";
        return kExitNoPm;
    case hm3::pipeline::PipelineResult::Status::Undecided:
        std::cout << "undecided (stage " << res.failed_stage << "; " << res.detail << ")\n";
        return kExitUndecided;
    }
    return kExitUndecided;
}

int cmd_linkfact() {
    int classified = 0, other = 0, with5 = 0;
    for (int bits = 0; bits < 512; ++bits) {
        hm3::cover::LinkGraph L;
        L.bits = (std::uint16_t)bits;
        auto cls = hm3::cover::classify_link(L);
        if (L.edge_count() >= 5) {
            ++with5;
            if (cls.kind == hm3::cover::LinkClass::Kind::Other) ++other;
            else ++classified;
        }
    }
    std::cout << classified << "/" << with5 << " classified, " << other << " other\n";
    return other == 0 ? kExitOk : kExitNoPm;
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"3-uniform hypergraph perfect matching laboratory"};
    app.require_subcommand(1);

    // gen
    auto * gen = app.add_subcommand("gen", "generate an instance file");
    hm3::gen::GeneratorSpec spec;
    std::string kind = "random", gen_out = "-";
    gen->add_option("--kind", kind, "extremal|extremal-plus|random|min-degree-random|perturbed-extremal");
    gen->add_option("--n", spec.n, "vertex count")->required();
    gen->add_option("--p", spec.p, "edge probability");
    gen->add_option("--tau", spec.tau, "degree floor");
    gen->add_option("--flips", spec.flips, "perturbation count");
    gen->add_option("--seed", spec.seed, "seed");
    gen->add_option("-o,--out", gen_out, "output file (- for stdout)");

    // solve
    auto * solve = app.add_subcommand("solve", "decide perfect matching exactly");
    std::string solve_in, solve_witness;
    std::uint64_t solve_budget = hm3::exact::kDefaultBranchBudget;
    solve->add_option("file", solve_in, "instance file (- for stdin)")->required();
    solve->add_option("--witness", solve_witness, "write the witness matching here");
    solve->add_option("--budget", solve_budget, "branch solver node budget");

    // verify
    auto * verify = app.add_subcommand("verify", "check a matching file against an instance");
    std::string verify_graph, verify_witness;
    verify->add_option("file", verify_graph, "instance file")->required();
    verify->add_option("matching", verify_witness, "witness file")->required();

    // threshold
    auto * thr = app.add_subcommand("threshold", "print the forcing degree threshold");
    int thr_n = 0;
    thr->add_option("--n", thr_n, "vertex count (divisible by 3)")->required();

    // enumerate-n6
    auto * enum6 = app.add_subcommand("enumerate-n6", "exhaustive scan of all 3-graphs on 6 vertices");
    int enum_workers = 1;
    std::string enum_csv;
    enum6->add_option("--workers", enum_workers, "worker threads");
    enum6->add_option("--csv", enum_csv, "write the report rows here");

    // sample
    auto * sample = app.add_subcommand("sample", "sampled perfect-matching evidence at a degree floor");
    int sample_n = 9, sample_count = 100, sample_workers = 1;
    long long sample_tau = 14;
    std::uint64_t sample_seed = 0;
    std::string sample_csv, sample_dir = ".";
    sample->add_option("--n", sample_n)->required();
    sample->add_option("--tau", sample_tau)->required();
    sample->add_option("--count", sample_count, "number of samples");
    sample->add_option("--seed", sample_seed);
    sample->add_option("--workers", sample_workers);
    sample->add_option("--csv", sample_csv, "write the report row here");
    sample->add_option("--save-dir", sample_dir, "directory for counterexample files");

    // pipeline
    auto * pipe = app.add_subcommand("pipeline", "full heuristic perfect-matching pipeline");
    std::string pipe_in, pipe_witness, pipe_alpha = "0.3", pipe_trace, pipe_stage_trace;
    std::string pipe_fallback = "auto";
    std::uint64_t pipe_seed = 0;
    pipe->add_option("file", pipe_in, "instance file")->required();
    pipe->add_option("--alpha", pipe_alpha, "extremality parameter (rational or decimal)");
    pipe->add_option("--seed", pipe_seed);
    pipe->add_option("--fallback", pipe_fallback, "auto|on|off (exact solver on stage failure)");
    pipe->add_option("--witness", pipe_witness, "write the perfect matching here");
    pipe->add_option("--trace-cover", pipe_trace, "cover iteration CSV");
    pipe->add_option("--trace-stages", pipe_stage_trace, "extremal stage CSV");

    // linkfact
    app.add_subcommand("linkfact", "classify all 512 balanced 3x3 bipartite link graphs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            spec.kind = hm3::gen::GeneratorSpec::parse_kind(kind);
            return cmd_gen(spec, gen_out);
        }
        if (solve->parsed()) return cmd_solve(solve_in, solve_witness, solve_budget);
        if (verify->parsed()) return cmd_verify(verify_graph, verify_witness);
        if (thr->parsed()) {
            std::cout << hm3::lab::threshold(thr_n) << "\n";
            return kExitOk;
        }
        if (enum6->parsed()) return cmd_enumerate_n6(enum_workers, enum_csv);
        if (sample->parsed())
            return cmd_sample(sample_n, sample_tau, sample_count, sample_seed, sample_workers,
                              sample_csv, sample_dir);
        if (pipe->parsed()) {
            hm3::pipeline::PipelineConfig cfg;
            cfg.alpha = hm3::Rational::parse(pipe_alpha);
            cfg.seed = pipe_seed;
            if (pipe_fallback == "on") cfg.fallback = hm3::pipeline::PipelineConfig::Fallback::On;
            else if (pipe_fallback == "off") cfg.fallback = hm3::pipeline::PipelineConfig::Fallback::Off;
            return cmd_pipeline(pipe_in, cfg, pipe_witness, pipe_trace, pipe_stage_trace);
        }
        if (app.get_subcommand("linkfact")->parsed()) return cmd_linkfact();
    } catch (const hm3::Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case hm3::Err::ParseError:
        case hm3::Err::InvalidOrder:
        case hm3::Err::InvalidArgument:
            return kExitData;
        default:
            return kExitUndecided;
        }
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
