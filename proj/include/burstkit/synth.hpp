#pragma once

#include "burstkit/trace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace burst {

enum class ProcessKind { Poisson, Bursty, Scripted };

const char* process_kind_name(ProcessKind k);

// One node's link-creation process over [start_ts, horizon_ts).
struct NodeProcessSpec {
    ProcessKind kind = ProcessKind::Poisson;
    double rate = 0.0;     // poisson: events per second
    double alpha = 0.0;    // bursty: pareto exponent
    double lambda_s = 0.0; // bursty: cutoff scale, seconds
    double xmin_s = 1.0;   // bursty: smallest gap, seconds
    std::vector<std::uint32_t> weekly; // scripted: events per week from start_ts
    std::int64_t start_ts = 0;
    std::int64_t horizon_ts = 0;
    std::uint64_t seed = 0;
};

// Sorted integer event timestamps.  Poisson and bursty modes accumulate
// continuous renewal gaps (inverse-CDF exponential; rejection-sampled
// cutoff-Pareto) and floor to whole seconds; scripted mode places each
// week's count uniformly inside that week.  Everything >= horizon_ts is
// dropped.
std::vector<std::int64_t> gen_event_times(const NodeProcessSpec& spec);

struct SynthConfig {
    // analysis population; node ids are the vector indices
    std::vector<NodeProcessSpec> nodes;
    // partner-only pool appended after the analysis ids.  When nonzero,
    // partners come exclusively from this pool, so analysis nodes' weekly
    // series reflect their own processes and nothing else.
    std::uint32_t sink_nodes = 0;
    // two extra nodes joined by one edge at ts = 0, pinning the epoch (and
    // hence the week grid) to the generation clock even when every real
    // node starts mid-week
    bool anchor_edge = true;
    std::uint64_t seed = 0; // per-node streams use seed ^ node-id
};

struct SynthResult {
    Trace trace;
    std::uint32_t analysis_count = 0; // ids [0, analysis_count) are analysis nodes
    std::uint32_t sink_count = 0;     // ids [analysis_count, analysis_count+sink_count)
    bool anchored = false;            // two highest ids form the anchor pair
};

// Realizes every node's event times, assigns each event a uniformly random
// partner (rejecting self-loops and already-used pairs), and returns the
// canonical sorted trace.  Deterministic for a given config, independent of
// thread count.
SynthResult gen_trace(const SynthConfig& cfg, unsigned n_threads = 1);

// Ground-truth sidecar: one CSV row per node id with its generating process.
void write_ground_truth(const std::string& path, const SynthConfig& cfg);

} // namespace burst
