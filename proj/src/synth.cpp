#include "burstkit/synth.hpp"

#include "burstkit/csv.hpp"
#include "burstkit/samplers.hpp"
#include "burstkit/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace burst {

const char* process_kind_name(ProcessKind k) {
    switch (k) {
    case ProcessKind::Poisson: return "poisson";
    case ProcessKind::Bursty: return "bursty";
    case ProcessKind::Scripted: return "scripted";
    }
    return "?";
}

std::vector<std::int64_t> gen_event_times(const NodeProcessSpec& spec) {
    if (spec.horizon_ts <= spec.start_ts)
        throw std::invalid_argument("gen_event_times: empty horizon");
    if (spec.start_ts < 0) throw std::invalid_argument("gen_event_times: start_ts < 0");

    SplitMix64 rng(spec.seed);
    std::vector<std::int64_t> out;

    switch (spec.kind) {
    case ProcessKind::Poisson: {
        if (!(spec.rate > 0.0)) throw std::invalid_argument("poisson rate must be > 0");
        double t = static_cast<double>(spec.start_ts);
        const double horizon = static_cast<double>(spec.horizon_ts);
        for (;;) {
            t += sample_exponential(spec.rate, rng);
            if (t >= horizon) break;
            out.push_back(static_cast<std::int64_t>(std::floor(t)));
        }
        break;
    }
    case ProcessKind::Bursty: {
        if (!(spec.alpha > 0.0) || !(spec.lambda_s > 0.0) || !(spec.xmin_s > 0.0))
            throw std::invalid_argument("bursty parameters must be > 0");
        double t = static_cast<double>(spec.start_ts);
        const double horizon = static_cast<double>(spec.horizon_ts);
        for (;;) {
            t += sample_pareto_cutoff(spec.alpha, spec.lambda_s, spec.xmin_s, rng);
            if (t >= horizon) break;
            out.push_back(static_cast<std::int64_t>(std::floor(t)));
        }
        break;
    }
    case ProcessKind::Scripted: {
        for (std::size_t w = 0; w < spec.weekly.size(); ++w) {
            const std::int64_t ws = spec.start_ts + static_cast<std::int64_t>(w) * kWeekSeconds;
            for (std::uint32_t k = 0; k < spec.weekly[w]; ++k) {
                auto off = static_cast<std::int64_t>(rng.uniform01() *
                                                     static_cast<double>(kWeekSeconds));
                std::int64_t ts = ws + off;
                if (ts < spec.horizon_ts) out.push_back(ts);
            }
        }
        std::sort(out.begin(), out.end());
        break;
    }
    }
    return out;
}

SynthResult gen_trace(const SynthConfig& cfg, unsigned n_threads) {
    const std::size_t a_count = cfg.nodes.size();
    if (a_count == 0) throw std::invalid_argument("gen_trace: no nodes");
    if (cfg.sink_nodes == 0 && a_count < 2)
        throw std::invalid_argument("gen_trace: need >= 2 nodes or a sink pool");

    // per-node times, parallel; streams keyed by seed ^ node-id
    std::vector<std::vector<std::int64_t>> times(a_count);
    parallel_for(a_count, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            NodeProcessSpec spec = cfg.nodes[i];
            if (spec.seed == 0) spec.seed = cfg.seed ^ static_cast<std::uint64_t>(i);
            times[i] = gen_event_times(spec);
        }
    });

    struct Pending {
        std::int64_t ts;
        NodeId src;
    };
    std::size_t total = 0;
    for (const auto& v : times) total += v.size();
    std::vector<Pending> stream;
    stream.reserve(total);
    for (std::size_t i = 0; i < a_count; ++i)
        for (auto ts : times[i]) stream.push_back({ts, static_cast<NodeId>(i)});
    std::sort(stream.begin(), stream.end(), [](const Pending& a, const Pending& b) {
        if (a.ts != b.ts) return a.ts < b.ts;
        return a.src < b.src;
    });

    // sequential partner assignment: one shared stream keeps the result
    // independent of the generation thread count
    const NodeId pool_base = cfg.sink_nodes > 0 ? static_cast<NodeId>(a_count) : 0;
    const std::uint32_t pool_size =
        cfg.sink_nodes > 0 ? cfg.sink_nodes : static_cast<std::uint32_t>(a_count);
    SplitMix64 partner_rng(cfg.seed ^ 0xa5a5a5a55a5a5a5aULL);
    std::unordered_set<std::uint64_t> used;
    used.reserve(total * 2 + 4);
    auto pair_key = [](NodeId x, NodeId y) {
        std::uint64_t a = std::min(x, y), b = std::max(x, y);
        return (a << 32) | b;
    };

    std::vector<EdgeEvent> events;
    events.reserve(total + 1);
    constexpr int kPartnerAttempts = 10000;
    for (const auto& pe : stream) {
        bool placed = false;
        for (int att = 0; att < kPartnerAttempts; ++att) {
            auto partner = static_cast<NodeId>(
                pool_base + static_cast<std::uint32_t>(partner_rng.uniform01() * pool_size));
            if (partner == pe.src) continue;
            if (used.insert(pair_key(pe.src, partner)).second) {
                events.push_back({pe.src, partner, pe.ts});
                placed = true;
                break;
            }
        }
        if (!placed) throw std::runtime_error("gen_trace: partner pool exhausted");
    }

    SynthResult res;
    res.analysis_count = static_cast<std::uint32_t>(a_count);
    res.sink_count = cfg.sink_nodes;
    res.anchored = cfg.anchor_edge;
    if (cfg.anchor_edge) {
        auto a0 = static_cast<NodeId>(a_count + cfg.sink_nodes);
        events.push_back({a0, static_cast<NodeId>(a0 + 1), 0});
    }
    res.trace = from_events(std::move(events));
    return res;
}

void write_ground_truth(const std::string& path, const SynthConfig& cfg) {
    CsvFile f(path);
    f.write("node,kind,rate,alpha,lambda,xmin,start_ts,horizon_ts,weekly\n");
    std::string row;
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
        const auto& s = cfg.nodes[i];
        row.clear();
        append_uint(row, i);
        row.push_back(',');
        row += process_kind_name(s.kind);
        row.push_back(',');
        append_double(row, s.rate);
        row.push_back(',');
        append_double(row, s.alpha);
        row.push_back(',');
        append_double(row, s.lambda_s);
        row.push_back(',');
        append_double(row, s.xmin_s);
        row.push_back(',');
        append_int(row, s.start_ts);
        row.push_back(',');
        append_int(row, s.horizon_ts);
        row.push_back(',');
        for (std::size_t w = 0; w < s.weekly.size(); ++w) {
            if (w) row.push_back(';');
            append_uint(row, s.weekly[w]);
        }
        row.push_back('\n');
        f.write(row);
    }
    std::string extra;
    for (std::uint32_t k = 0; k < cfg.sink_nodes; ++k) {
        extra.clear();
        append_uint(extra, cfg.nodes.size() + k);
        extra += ",sink,0,0,0,0,0,0,\n";
        f.write(extra);
    }
    if (cfg.anchor_edge) {
        for (int k = 0; k < 2; ++k) {
            extra.clear();
            append_uint(extra, cfg.nodes.size() + cfg.sink_nodes + static_cast<unsigned>(k));
            extra += ",anchor,0,0,0,0,0,0,\n";
            f.write(extra);
        }
    }
    f.close();
}

} // namespace burst
