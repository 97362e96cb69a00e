// burstkit: burst/phase analysis of growing-network link traces.
//
//   burstkit all -i trace.tsv -o out/ --seed 7
//   burstkit synth -o data/ --seed 7 --poisson 100 --bursty 100 --sinks 5000
//
// Analysis subcommands write CSV reports; failures print a JSON error record
// on stderr and exit nonzero.

#include "burstkit/pipeline.hpp"
#include "burstkit/synth.hpp"
#include "burstkit/trace.hpp"
#include "burstkit/util.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

struct SynthCli {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int weeks = 52;
    unsigned poisson = 0;
    double poisson_rate = 1.0 / 3600.0;
    unsigned bursty = 0;
    double bursty_alpha = 1.0;
    double bursty_lambda = 1e6;
    double bursty_xmin = 1.0;
    unsigned scripted = 0;
    std::string script = "3;8;8;4;0";
    unsigned sinks = 0;
    int stagger_weeks = 0; // node i joins at week (i mod stagger)
    bool no_anchor = false;
    unsigned threads = 0;
};

std::vector<std::uint32_t> parse_script(const std::string& s) {
    std::vector<std::uint32_t> weekly;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t semi = s.find(';', pos);
        if (semi == std::string::npos) semi = s.size();
        weekly.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(pos, semi - pos))));
        pos = semi + 1;
    }
    return weekly;
}

int run_synth(const SynthCli& sc) {
    burst::SynthConfig cfg;
    cfg.seed = sc.seed;
    cfg.sink_nodes = sc.sinks;
    cfg.anchor_edge = !sc.no_anchor;
    const std::int64_t horizon = static_cast<std::int64_t>(sc.weeks) * burst::kWeekSeconds;
    auto weekly = parse_script(sc.script);

    auto start_of = [&](std::size_t i) {
        if (sc.stagger_weeks <= 0) return std::int64_t{0};
        return static_cast<std::int64_t>(static_cast<int>(i % static_cast<std::size_t>(
                                             sc.stagger_weeks))) *
               burst::kWeekSeconds;
    };
    for (unsigned k = 0; k < sc.poisson; ++k) {
        burst::NodeProcessSpec sp;
        sp.kind = burst::ProcessKind::Poisson;
        sp.rate = sc.poisson_rate;
        sp.start_ts = start_of(cfg.nodes.size());
        sp.horizon_ts = horizon;
        cfg.nodes.push_back(std::move(sp));
    }
    for (unsigned k = 0; k < sc.bursty; ++k) {
        burst::NodeProcessSpec sp;
        sp.kind = burst::ProcessKind::Bursty;
        sp.alpha = sc.bursty_alpha;
        sp.lambda_s = sc.bursty_lambda;
        sp.xmin_s = sc.bursty_xmin;
        sp.start_ts = start_of(cfg.nodes.size());
        sp.horizon_ts = horizon;
        cfg.nodes.push_back(std::move(sp));
    }
    for (unsigned k = 0; k < sc.scripted; ++k) {
        burst::NodeProcessSpec sp;
        sp.kind = burst::ProcessKind::Scripted;
        sp.weekly = weekly;
        sp.start_ts = start_of(cfg.nodes.size());
        sp.horizon_ts = horizon;
        cfg.nodes.push_back(std::move(sp));
    }

    auto res = burst::gen_trace(cfg, sc.threads == 0 ? burst::default_threads() : sc.threads);
    std::filesystem::create_directories(sc.out_dir);
    auto trace_path = (std::filesystem::path(sc.out_dir) / "trace.tsv").string();
    burst::write_trace_file(trace_path, res.trace);
    burst::write_ground_truth((std::filesystem::path(sc.out_dir) / "ground_truth.csv").string(),
                              cfg);
    std::printf("wrote %s: %zu events, %zu nodes\n", trace_path.c_str(),
                res.trace.edge_count(), res.trace.node_count());
    return 0;
}

void add_run_options(CLI::App* cmd, burst::RunConfig& cfg, bool needs_input = true) {
    auto* in = cmd->add_option("-i,--input", cfg.input, "trace file (tsv/csv, optionally .gz)");
    if (needs_input) in->required();
    cmd->add_option("-o,--out", cfg.out_dir, "output directory");
    cmd->add_option("--dt-seconds", cfg.dt_seconds, "bin width in seconds");
    cmd->add_option("--theta1", cfg.theta1, "acceleration threshold");
    cmd->add_option("--theta2", cfg.theta2, "deceleration threshold");
    cmd->add_option("--min-degree", cfg.min_degree, "degree filter for psi/fitting");
    cmd->add_option("--alpha-bin", cfg.alpha_bin, "exponent histogram bin width");
    cmd->add_option("--degree-bin", cfg.degree_bin, "degree bin width");
    cmd->add_option("--bootstrap", cfg.n_bootstrap, "K-S bootstrap resamples");
    cmd->add_option("--ks-level", cfg.ks_level, "K-S retention level");
    cmd->add_option("--ks-cap", cfg.ks_cap, "bootstrap at most this many nodes (0 = all)");
    cmd->add_option("--seed", cfg.seed, "RNG seed (required for randomized stages)")
        ->each([&cfg](const std::string&) { cfg.seed_set = true; });
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
}

int fail(const std::string& stage, const std::string& message) {
    nlohmann::json rec;
    rec["error"]["stage"] = stage;
    rec["error"]["message"] = message;
    std::fprintf(stderr, "%s\n", rec.dump().c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"burst/phase analytics for timestamped link-creation traces"};
    app.require_subcommand(1);

    burst::RunConfig cfg;
    std::string picked;
    for (const char* name : {"ingest-check", "phases", "stats", "fit", "powerlaw", "all"}) {
        auto* sub = app.add_subcommand(name);
        add_run_options(sub, cfg);
        sub->callback([&picked, name] { picked = name; });
    }

    SynthCli sc;
    auto* synth = app.add_subcommand("synth", "generate a synthetic trace with ground truth");
    synth->add_option("-o,--out", sc.out_dir, "output directory");
    synth->add_option("--seed", sc.seed, "RNG seed")->required();
    synth->add_option("--weeks", sc.weeks, "horizon in weeks");
    synth->add_option("--poisson", sc.poisson, "number of poisson nodes");
    synth->add_option("--poisson-rate", sc.poisson_rate, "poisson events/s");
    synth->add_option("--bursty", sc.bursty, "number of bursty nodes");
    synth->add_option("--bursty-alpha", sc.bursty_alpha, "bursty pareto exponent");
    synth->add_option("--bursty-lambda", sc.bursty_lambda, "bursty cutoff scale, s");
    synth->add_option("--bursty-xmin", sc.bursty_xmin, "bursty smallest gap, s");
    synth->add_option("--scripted", sc.scripted, "number of scripted nodes");
    synth->add_option("--script", sc.script, "weekly counts, ';'-separated");
    synth->add_option("--sinks", sc.sinks, "partner-only pool size");
    synth->add_option("--stagger-weeks", sc.stagger_weeks, "cycle node start weeks");
    synth->add_flag("--no-anchor", sc.no_anchor, "skip the epoch anchor edge");
    synth->add_option("--threads", sc.threads, "worker threads (0 = hardware)");
    synth->callback([&picked] { picked = "synth"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (picked == "synth") return run_synth(sc);
        burst::run(picked, cfg);
        return 0;
    } catch (const burst::StageError& e) {
        return fail(e.stage(), e.what());
    } catch (const std::exception& e) {
        return fail(picked.empty() ? "cli" : picked, e.what());
    }
}
