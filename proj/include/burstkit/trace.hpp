#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace burst {

using NodeId = std::uint32_t;

constexpr std::int64_t kWeekSeconds = 604800;

struct EdgeEvent {
    NodeId src = 0;
    NodeId dst = 0;
    std::int64_t ts = 0; // seconds since trace epoch origin (raw input value)

    friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical in-memory trace: events sorted by (ts, src, dst), node ids sorted
// and de-duplicated, epoch = smallest timestamp seen.
struct Trace {
    std::vector<EdgeEvent> events;
    std::vector<NodeId> nodes;
    std::int64_t epoch = 0;

    std::size_t edge_count() const { return events.size(); }
    std::size_t node_count() const { return nodes.size(); }

    // index of the bin containing ts, counted from the epoch
    int week_of(std::int64_t ts, std::int64_t dt_seconds) const {
        return static_cast<int>((ts - epoch) / dt_seconds);
    }

    int last_week(std::int64_t dt_seconds) const {
        if (events.empty()) return -1;
        return week_of(events.back().ts, dt_seconds);
    }
};

enum class Sep { Auto, Tab, Comma, Space };

// Parses "src dst ts" lines.  '#' starts a comment line, blank lines are
// ignored.  Throws TraceError on: malformed line (with line number),
// self-loop (with line number), duplicate unordered pair, negative
// timestamp, or an empty trace.
Trace parse_trace(std::string_view text, Sep sep = Sep::Auto);

// Reads a file (gzip-compressed or plain, sniffed by zlib) and parses it.
Trace parse_trace_file(const std::string& path, Sep sep = Sep::Auto);

// Canonicalizes in-memory events (sort, node index, epoch) with the same
// validation as parse_trace.
Trace from_events(std::vector<EdgeEvent> events);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

// Per-node weekly edge counts from the node's first active week (join) to
// the last week of the whole trace; every edge counts for both endpoints.
struct NodeSeries {
    NodeId node = 0;
    int join_week = 0;
    std::vector<std::uint32_t> weekly; // index 0 == join_week

    int life() const { return static_cast<int>(weekly.size()); }

    std::uint64_t final_degree() const {
        std::uint64_t d = 0;
        for (auto c : weekly) d += c;
        return d;
    }
};

// Series are returned sorted by node id; weekly[0] > 0 by construction.
std::vector<NodeSeries> build_node_series(const Trace& trace,
                                          std::int64_t dt_seconds = kWeekSeconds);

} // namespace burst
