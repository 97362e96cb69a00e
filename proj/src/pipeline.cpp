#include "burstkit/pipeline.hpp"

#include "burstkit/csv.hpp"
#include "burstkit/interevent.hpp"
#include "burstkit/phase.hpp"
#include "burstkit/phase_stats.hpp"
#include "burstkit/powerlaw.hpp"
#include "burstkit/trace.hpp"
#include "burstkit/util.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

namespace burst {

namespace {

using Clock = std::chrono::steady_clock;

struct StageLog {
    std::vector<std::pair<std::string, double>> timings;
    std::vector<std::pair<std::string, std::string>> info;

    template <class Fn> void stage(const std::string& name, Fn&& fn) {
        auto t0 = Clock::now();
        try {
            fn();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        timings.emplace_back(name, secs);
    }

    void note(const std::string& key, const std::string& value) { info.emplace_back(key, value); }
    void note_u(const std::string& key, std::uint64_t v) { note(key, std::to_string(v)); }
    void note_d(const std::string& key, double v) { note(key, fmt_double(v)); }
};

std::string join_path(const std::string& dir, const char* name) {
    return (std::filesystem::path(dir) / name).string();
}

const char* phase_cols = "acc,dec,cruise,inact";

void write_share_table(const std::string& path, const PhaseShares& sh) {
    CsvFile f(path);
    f.write(std::string("stat,") + phase_cols + "\n");
    auto row = [&f](const char* name, const PhaseVec& v) {
        std::string s = name;
        for (double x : v) {
            s.push_back(',');
            append_double(s, x);
        }
        s.push_back('\n');
        f.write(s);
    };
    row("phi_l", sh.phi_l);
    row("phi_e", sh.phi_e);
    row("psi_l_q80", sh.psi_l_q);
    row("psi_e_q80", sh.psi_e_q);
    f.close();
}

void write_phases_csv(const std::string& path, const std::vector<PhaseTimeline>& timelines,
                      const std::vector<NodeSeries>& series) {
    CsvFile f(path);
    f.write("node,week,n,a,phase\n");
    std::string row;
    for (std::size_t i = 0; i < timelines.size(); ++i) {
        const auto& tl = timelines[i];
        for (std::size_t t = 0; t < tl.s.size(); ++t) {
            row.clear();
            append_uint(row, tl.node);
            row.push_back(',');
            append_int(row, tl.join_week + static_cast<int>(t));
            row.push_back(',');
            append_uint(row, series[i].weekly[t]);
            row.push_back(',');
            append_double(row, tl.a[t]);
            row.push_back(',');
            row += phase_name(tl.s[t]);
            row.push_back('\n');
            f.write(row);
        }
    }
    f.close();
}

void write_transitions_csv(const std::string& path, const std::vector<PhaseTimeline>& timelines) {
    CsvFile f(path);
    f.write("node,week,from,to\n");
    std::string row;
    for (const auto& tl : timelines) {
        for (const auto& tr : phase_transitions(tl)) {
            row.clear();
            append_uint(row, tl.node);
            row.push_back(',');
            append_int(row, tr.week);
            row.push_back(',');
            row += phase_name(tr.from);
            row.push_back(',');
            row += phase_name(tr.to);
            row.push_back('\n');
            f.write(row);
        }
    }
    f.close();
}

void write_aging(const std::string& by_week, const std::string& by_age, const AgingReport& rep) {
    {
        CsvFile f(by_week);
        f.write("week,n_first_acc,n_first_dec,n_max_acc,n_max_dec,acc_dec_count,network_size\n");
        std::string row;
        for (std::size_t w = 0; w < rep.network_size.size(); ++w) {
            row.clear();
            append_uint(row, w);
            for (auto v : {rep.n_first_acc[w], rep.n_first_dec[w], rep.n_max_acc[w],
                           rep.n_max_dec[w], rep.acc_dec_counts[w], rep.network_size[w]}) {
                row.push_back(',');
                append_uint(row, v);
            }
            row.push_back('\n');
            f.write(row);
        }
        f.close();
    }
    {
        CsvFile f(by_age);
        f.write("age,avg_acc,avg_dec,weeks_acc,weeks_dec\n");
        std::string row;
        for (std::size_t t = 0; t < rep.avg_acc.size(); ++t) {
            row.clear();
            append_uint(row, t);
            row.push_back(',');
            append_double(row, rep.avg_acc[t]);
            row.push_back(',');
            append_double(row, rep.avg_dec[t]);
            row.push_back(',');
            append_uint(row, rep.weeks_acc[t]);
            row.push_back(',');
            append_uint(row, rep.weeks_dec[t]);
            row.push_back('\n');
            f.write(row);
        }
        f.close();
    }
}

void write_degree_bins(const std::string& path, const std::vector<DegreeBinRow>& rows) {
    CsvFile f(path);
    f.write("bin_lo,bin_mid,mean,median,count\n");
    std::string row;
    for (const auto& r : rows) {
        row.clear();
        append_uint(row, r.bin_lo);
        row.push_back(',');
        append_double(row, r.bin_mid);
        row.push_back(',');
        append_double(row, r.mean);
        row.push_back(',');
        append_double(row, r.median);
        row.push_back(',');
        append_uint(row, r.count);
        row.push_back('\n');
        f.write(row);
    }
    f.close();
}

void write_fits_csv(const std::string& path, const std::vector<NodeFit>& fits) {
    CsvFile f(path);
    f.write("node,model,alpha,lambda,mu,aic_exp,aic_pareto,ks_stat,ks_p,"
            "final_degree,age_weeks,converged,at_bound\n");
    std::string row;
    for (const auto& nf : fits) {
        const FitResult& sel = nf.chosen();
        row.clear();
        append_uint(row, nf.node);
        row.push_back(',');
        row += model_name(nf.selected);
        row.push_back(',');
        append_double(row, nf.pareto_fit.alpha);
        row.push_back(',');
        append_double(row, nf.pareto_fit.lambda);
        row.push_back(',');
        append_double(row, nf.exp_fit.mu);
        row.push_back(',');
        append_double(row, nf.exp_fit.aic);
        row.push_back(',');
        append_double(row, nf.pareto_fit.aic);
        row.push_back(',');
        if (sel.ks_p >= 0.0) {
            append_double(row, sel.ks_stat);
            row.push_back(',');
            append_double(row, sel.ks_p);
        } else {
            row.push_back(',');
        }
        row.push_back(',');
        append_uint(row, nf.final_degree);
        row.push_back(',');
        append_int(row, nf.age_weeks);
        row.push_back(',');
        row.push_back(nf.pareto_fit.converged ? '1' : '0');
        row.push_back(',');
        row.push_back(nf.pareto_fit.at_bound ? '1' : '0');
        row.push_back('\n');
        f.write(row);
    }
    f.close();
}

void write_hist(const std::string& path, const std::vector<HistBin>& bins) {
    CsvFile f(path);
    f.write("bin_left,count\n");
    std::string row;
    for (const auto& b : bins) {
        row.clear();
        append_double(row, b.left);
        row.push_back(',');
        append_uint(row, b.count);
        row.push_back('\n');
        f.write(row);
    }
    f.close();
}

void write_covariate_bins(const std::string& path, const std::vector<CovariateBinRow>& rows) {
    CsvFile f(path);
    f.write("bin_lo,mean,median,stddev,count\n");
    std::string row;
    for (const auto& r : rows) {
        row.clear();
        append_double(row, r.bin_lo);
        row.push_back(',');
        append_double(row, r.mean);
        row.push_back(',');
        append_double(row, r.median);
        row.push_back(',');
        append_double(row, r.stddev);
        row.push_back(',');
        append_uint(row, r.count);
        row.push_back('\n');
        f.write(row);
    }
    f.close();
}

void write_ccdf(const std::string& path, const std::vector<CcdfPoint>& pts) {
    CsvFile f(path);
    f.write("value,tail_prob\n");
    std::string row;
    for (const auto& p : pts) {
        row.clear();
        append_double(row, p.value);
        row.push_back(',');
        append_double(row, p.tail_prob);
        row.push_back('\n');
        f.write(row);
    }
    f.close();
}

void write_manifest(const std::string& path, const RunConfig& cfg, const StageLog& log) {
    CsvFile f(path);
    f.write("key,value\n");
    auto kv = [&f](const std::string& k, const std::string& v) { f.write(k + "," + v + "\n"); };
    kv("config.input", cfg.input);
    kv("config.out", cfg.out_dir);
    kv("config.dt_seconds", std::to_string(cfg.dt_seconds));
    kv("config.theta1", fmt_double(cfg.theta1));
    kv("config.theta2", fmt_double(cfg.theta2));
    kv("config.min_degree", std::to_string(cfg.min_degree));
    kv("config.alpha_bin", fmt_double(cfg.alpha_bin));
    kv("config.degree_bin", fmt_double(cfg.degree_bin));
    kv("config.bootstrap", std::to_string(cfg.n_bootstrap));
    kv("config.ks_level", fmt_double(cfg.ks_level));
    kv("config.ks_cap", std::to_string(cfg.ks_cap));
    if (cfg.seed_set) kv("config.seed", std::to_string(cfg.seed));
    kv("config.threads", std::to_string(cfg.threads));
    for (const auto& [k, v] : log.info) kv("info." + k, v);
    f.close();
}

void write_timings(const std::string& path, const StageLog& log) {
    CsvFile f(path);
    f.write("stage,seconds\n");
    for (const auto& [name, secs] : log.timings) f.write(name + "," + fmt_double(secs) + "\n");
    f.close();
}

} // namespace

std::string file_digest(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::vector<char> buf(1 << 20);
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0)
        h = fnv1a64(std::string_view(buf.data(), got), h);
    std::fclose(f);
    return to_hex(h);
}

RunConfig read_manifest_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        std::string key = line.substr(0, comma);
        std::string val = line.substr(comma + 1);
        if (key == "config.input") cfg.input = val;
        else if (key == "config.out") cfg.out_dir = val;
        else if (key == "config.dt_seconds") cfg.dt_seconds = std::stoll(val);
        else if (key == "config.theta1") cfg.theta1 = std::stod(val);
        else if (key == "config.theta2") cfg.theta2 = std::stod(val);
        else if (key == "config.min_degree") cfg.min_degree = std::stoull(val);
        else if (key == "config.alpha_bin") cfg.alpha_bin = std::stod(val);
        else if (key == "config.degree_bin") cfg.degree_bin = std::stod(val);
        else if (key == "config.bootstrap") cfg.n_bootstrap = std::stoi(val);
        else if (key == "config.ks_level") cfg.ks_level = std::stod(val);
        else if (key == "config.ks_cap") cfg.ks_cap = std::stoull(val);
        else if (key == "config.seed") {
            cfg.seed = std::stoull(val);
            cfg.seed_set = true;
        } else if (key == "config.threads")
            cfg.threads = static_cast<unsigned>(std::stoul(val));
    }
    return cfg;
}

void run(const std::string& subcommand, const RunConfig& cfg) {
    static const std::set<std::string> known = {"ingest-check", "phases", "stats",
                                                "fit",          "powerlaw", "all"};
    if (!known.count(subcommand))
        throw StageError("config", "unknown subcommand: " + subcommand);
    const bool want_phases = subcommand == "phases" || subcommand == "all";
    const bool want_stats = subcommand == "stats" || subcommand == "all";
    const bool want_fit = subcommand == "fit" || subcommand == "all";
    const bool want_powerlaw = subcommand == "powerlaw" || subcommand == "all";
    const bool need_phases = want_phases || want_stats || want_powerlaw;

    if (cfg.input.empty()) throw StageError("config", "no input trace given");
    if (want_fit && !cfg.seed_set)
        throw StageError("config", "randomized stages need an explicit --seed");
    if (cfg.dt_seconds <= 0) throw StageError("config", "dt_seconds must be positive");
    if (!(cfg.degree_bin >= 1.0)) throw StageError("config", "degree_bin must be >= 1");
    if (!(cfg.alpha_bin > 0.0)) throw StageError("config", "alpha_bin must be positive");
    if (!(cfg.ks_level > 0.0 && cfg.ks_level < 1.0))
        throw StageError("config", "ks_level must be in (0,1)");
    if (cfg.n_bootstrap <= 0) throw StageError("config", "bootstrap count must be positive");

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw StageError("config", "cannot create output dir: " + cfg.out_dir);

    const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
    StageLog log;
    Trace trace;
    std::vector<NodeSeries> series;
    std::vector<PhaseTimeline> timelines;
    PhaseConfig pc{cfg.theta1, cfg.theta2, 1};

    log.stage("ingest", [&] {
        log.note("trace_digest", file_digest(cfg.input));
        trace = parse_trace_file(cfg.input);
        log.note_u("events", trace.edge_count());
        log.note_u("nodes", trace.node_count());
        log.note_u("last_week", static_cast<std::uint64_t>(trace.last_week(cfg.dt_seconds)));
    });

    if (subcommand != "ingest-check") {
        log.stage("series", [&] { series = build_node_series(trace, cfg.dt_seconds); });
    }

    if (need_phases) {
        log.stage("phases", [&] {
            timelines = classify_all(series, pc, threads);
            if (want_phases) {
                write_phases_csv(join_path(cfg.out_dir, "phases.csv"), timelines, series);
                write_transitions_csv(join_path(cfg.out_dir, "transitions.csv"), timelines);
                AgingReport rep = aging_report(timelines, trace.last_week(cfg.dt_seconds));
                write_aging(join_path(cfg.out_dir, "aging_by_week.csv"),
                            join_path(cfg.out_dir, "aging_by_age.csv"), rep);
            }
        });
    }

    if (want_stats) {
        log.stage("stats", [&] {
            write_share_table(join_path(cfg.out_dir, "shares_all.csv"),
                              share_table(timelines, series, 0.8, 0));
            write_share_table(join_path(cfg.out_dir, "shares_filtered.csv"),
                              share_table(timelines, series, 0.8, cfg.min_degree));
            write_degree_bins(join_path(cfg.out_dir, "cruise_vs_degree.csv"),
                              cruise_share_vs_degree(timelines, series,
                                                     static_cast<std::uint64_t>(cfg.degree_bin),
                                                     cfg.min_degree));
        });
    }

    if (want_fit) {
        std::vector<NodeFit> fits;
        log.stage("fit", [&] {
            auto evs = node_event_times(trace);
            const int last = trace.last_week(cfg.dt_seconds);
            std::vector<InterEventSample> samples;
            for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
                auto s = extract_gaps(trace.nodes[i], evs[i], last - series[i].join_week,
                                      cfg.min_degree);
                if (s) samples.push_back(std::move(*s));
            }
            log.note_u("fit_eligible_nodes", samples.size());

            fits.resize(samples.size());
            parallel_for(samples.size(), threads, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) fits[i] = fit_node(samples[i]);
            });

            const std::size_t n_ks = cfg.ks_cap == 0
                                         ? samples.size()
                                         : std::min<std::size_t>(cfg.ks_cap, samples.size());
            parallel_for(n_ks, threads, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) {
                    KsOptions ko;
                    ko.n_bootstrap = cfg.n_bootstrap;
                    ko.seed = cfg.seed ^ static_cast<std::uint64_t>(fits[i].node);
                    ko.resample_resolution = 1.0;
                    FitResult& sel = fits[i].selected == Model::Exponential
                                         ? fits[i].exp_fit
                                         : fits[i].pareto_fit;
                    std::tie(sel.ks_stat, sel.ks_p) = ks_test(samples[i], sel, ko);
                }
            });

            std::size_t n_pareto = 0, n_retained = 0, n_nonconv = 0;
            for (const auto& nf : fits) {
                if (!nf.pareto_fit.converged) ++n_nonconv;
                if (nf.selected == Model::ParetoCutoff) ++n_pareto;
                double p = nf.chosen().ks_p;
                if (p < 0.0 || p >= cfg.ks_level) ++n_retained;
            }
            log.note_u("pareto_selected", n_pareto);
            log.note_u("exp_selected", fits.size() - n_pareto);
            log.note_u("pareto_nonconverged", n_nonconv);
            log.note_u("ks_tested", n_ks);
            log.note_u("ks_retained", n_retained);
            if (!fits.empty())
                log.note_d("retained_frac",
                           static_cast<double>(n_retained) / static_cast<double>(fits.size()));

            write_fits_csv(join_path(cfg.out_dir, "fits.csv"), fits);

            // alpha analyses over converged, pareto-selected, K-S-retained
            // fits (nodes beyond the bootstrap cap count as retained)
            std::vector<NodeFit> kept;
            std::vector<double> alphas;
            for (const auto& nf : fits) {
                if (nf.selected != Model::ParetoCutoff || !nf.pareto_fit.converged) continue;
                if (nf.pareto_fit.ks_p >= 0.0 && nf.pareto_fit.ks_p < cfg.ks_level) continue;
                kept.push_back(nf);
                alphas.push_back(nf.pareto_fit.alpha);
            }
            log.note_u("alpha_population", kept.size());
            write_hist(join_path(cfg.out_dir, "alpha_hist.csv"),
                       alphas.empty() ? std::vector<HistBin>{}
                                      : alpha_distribution(alphas, cfg.alpha_bin));
            write_covariate_bins(
                join_path(cfg.out_dir, "alpha_vs_degree.csv"),
                kept.empty() ? std::vector<CovariateBinRow>{}
                             : alpha_vs_covariate(kept, Covariate::FinalDegree, cfg.degree_bin));
            write_covariate_bins(join_path(cfg.out_dir, "alpha_vs_age.csv"),
                                 kept.empty()
                                     ? std::vector<CovariateBinRow>{}
                                     : alpha_vs_covariate(kept, Covariate::AgeWeeks, 1.0));
        });
    }

    if (want_powerlaw) {
        log.stage("powerlaw", [&] {
            CsvFile f(join_path(cfg.out_dir, "powerlaw.csv"));
            f.write("kind,alpha,xmin,ks_stat,n_tail\n");
            PowerLawOptions po;
            po.n_threads = threads;
            for (auto kind : {MagnitudeKind::Acc, MagnitudeKind::Dec}) {
                const char* name = kind == MagnitudeKind::Acc ? "acc" : "dec";
                std::string status = "ok";
                try {
                    auto mags = collect_magnitudes(timelines, kind);
                    write_ccdf(join_path(cfg.out_dir,
                                         kind == MagnitudeKind::Acc ? "ccdf_acc.csv"
                                                                    : "ccdf_dec.csv"),
                               ccdf(mags));
                    auto fit = fit_powerlaw(mags, po);
                    std::string row = name;
                    row.push_back(',');
                    append_double(row, fit.alpha);
                    row.push_back(',');
                    append_double(row, fit.xmin);
                    row.push_back(',');
                    append_double(row, fit.ks_stat);
                    row.push_back(',');
                    append_uint(row, fit.n_tail);
                    row.push_back('\n');
                    f.write(row);
                } catch (const std::exception&) {
                    status = "skipped";
                }
                log.note(std::string("powerlaw_") + name + "_status", status);
            }
            f.close();
        });
    }

    write_manifest(join_path(cfg.out_dir, "manifest.csv"), cfg, log);
    write_timings(join_path(cfg.out_dir, "timings.csv"), log);
}

} // namespace burst
