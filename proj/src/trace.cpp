#include "burstkit/trace.hpp"

#include "burstkit/csv.hpp"

#include <algorithm>
#include <charconv>
#include <zlib.h>

namespace burst {

namespace {

bool parse_u32(const char*& p, const char* end, std::uint32_t& out) {
    auto res = std::from_chars(p, end, out);
    if (res.ec != std::errc() || res.ptr == p) return false;
    p = res.ptr;
    return true;
}

bool parse_i64(const char*& p, const char* end, std::int64_t& out) {
    auto res = std::from_chars(p, end, out);
    if (res.ec != std::errc() || res.ptr == p) return false;
    p = res.ptr;
    return true;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw TraceError("line " + std::to_string(line_no) + ": " + what);
}

char detect_sep(std::string_view line) {
    if (line.find('\t') != std::string_view::npos) return '\t';
    if (line.find(',') != std::string_view::npos) return ',';
    return ' ';
}

// consume exactly one separator (runs allowed for spaces)
bool eat_sep(const char*& p, const char* end, char sep) {
    if (p >= end || *p != sep) return false;
    ++p;
    if (sep == ' ')
        while (p < end && *p == ' ') ++p;
    return true;
}

} // namespace

Trace from_events(std::vector<EdgeEvent> events) {
    if (events.empty()) throw TraceError("empty trace");

    // duplicate unordered pairs, regardless of timestamp
    {
        std::vector<std::uint64_t> keys;
        keys.reserve(events.size());
        for (const auto& ev : events) {
            std::uint64_t a = std::min(ev.src, ev.dst);
            std::uint64_t b = std::max(ev.src, ev.dst);
            keys.push_back((a << 32) | b);
        }
        std::sort(keys.begin(), keys.end());
        auto dup = std::adjacent_find(keys.begin(), keys.end());
        if (dup != keys.end())
            throw TraceError("duplicate edge between nodes " +
                             std::to_string(*dup >> 32) + " and " +
                             std::to_string(*dup & 0xffffffffu));
    }

    Trace trace;
    trace.events = std::move(events);
    std::sort(trace.events.begin(), trace.events.end(),
              [](const EdgeEvent& a, const EdgeEvent& b) {
                  if (a.ts != b.ts) return a.ts < b.ts;
                  if (a.src != b.src) return a.src < b.src;
                  return a.dst < b.dst;
              });
    trace.epoch = trace.events.front().ts;

    trace.nodes.reserve(trace.events.size() * 2);
    for (const auto& ev : trace.events) {
        trace.nodes.push_back(ev.src);
        trace.nodes.push_back(ev.dst);
    }
    std::sort(trace.nodes.begin(), trace.nodes.end());
    trace.nodes.erase(std::unique(trace.nodes.begin(), trace.nodes.end()),
                      trace.nodes.end());
    return trace;
}

Trace parse_trace(std::string_view text, Sep sep_opt) {
    char sep = 0;
    switch (sep_opt) {
    case Sep::Tab: sep = '\t'; break;
    case Sep::Comma: sep = ','; break;
    case Sep::Space: sep = ' '; break;
    case Sep::Auto: break;
    }

    std::vector<EdgeEvent> events;
    std::size_t pos = 0, line_no = 0;
    const std::size_t n = text.size();
    while (pos < n) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = n;
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        if (sep == 0) sep = detect_sep(line);

        const char* p = line.data();
        const char* end = p + line.size();
        EdgeEvent ev;
        if (!parse_u32(p, end, ev.src) || !eat_sep(p, end, sep) ||
            !parse_u32(p, end, ev.dst) || !eat_sep(p, end, sep) ||
            !parse_i64(p, end, ev.ts))
            fail_line(line_no, "expected 'src" + std::string(1, sep) + "dst" +
                                   std::string(1, sep) + "ts'");
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        if (p != end) fail_line(line_no, "trailing characters");
        if (ev.ts < 0) fail_line(line_no, "negative timestamp");
        if (ev.src == ev.dst)
            fail_line(line_no, "self-loop on node " + std::to_string(ev.src));
        events.push_back(ev);
    }
    return from_events(std::move(events));
}

Trace parse_trace_file(const std::string& path, Sep sep) {
    gzFile f = gzopen(path.c_str(), "rb"); // reads plain files too
    if (!f) throw TraceError("cannot open: " + path);
    gzbuffer(f, 1 << 20);
    std::string text;
    char buf[1 << 20];
    int got;
    while ((got = gzread(f, buf, sizeof(buf))) > 0) text.append(buf, static_cast<std::size_t>(got));
    bool bad = got < 0;
    gzclose(f);
    if (bad) throw TraceError("read/decompress failed: " + path);
    return parse_trace(text, sep);
}

void write_trace(std::ostream& out, const Trace& trace) {
    std::string buf;
    buf.reserve(1 << 20);
    for (const auto& ev : trace.events) {
        append_uint(buf, ev.src);
        buf.push_back('\t');
        append_uint(buf, ev.dst);
        buf.push_back('\t');
        append_int(buf, ev.ts);
        buf.push_back('\n');
        if (buf.size() >= (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_trace_file(const std::string& path, const Trace& trace) {
    CsvFile f(path);
    std::string buf;
    buf.reserve(1 << 16);
    for (const auto& ev : trace.events) {
        buf.clear();
        append_uint(buf, ev.src);
        buf.push_back('\t');
        append_uint(buf, ev.dst);
        buf.push_back('\t');
        append_int(buf, ev.ts);
        buf.push_back('\n');
        f.write(buf);
    }
    f.close();
}

std::vector<NodeSeries> build_node_series(const Trace& trace, std::int64_t dt_seconds) {
    if (dt_seconds <= 0) throw TraceError("bin width must be positive");
    if (trace.events.empty()) throw TraceError("empty trace");

    const auto& nodes = trace.nodes;
    auto index_of = [&nodes](NodeId id) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    const int last = trace.last_week(dt_seconds);
    std::vector<int> join(nodes.size(), last + 1);
    for (const auto& ev : trace.events) {
        int w = trace.week_of(ev.ts, dt_seconds);
        auto touch = [&](NodeId id) {
            std::size_t i = index_of(id);
            if (w < join[i]) join[i] = w;
        };
        touch(ev.src);
        touch(ev.dst);
    }

    std::vector<NodeSeries> series(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        series[i].node = nodes[i];
        series[i].join_week = join[i];
        series[i].weekly.assign(static_cast<std::size_t>(last - join[i] + 1), 0);
    }
    for (const auto& ev : trace.events) {
        int w = trace.week_of(ev.ts, dt_seconds);
        auto bump = [&](NodeId id) {
            std::size_t i = index_of(id);
            ++series[i].weekly[static_cast<std::size_t>(w - join[i])];
        };
        bump(ev.src);
        bump(ev.dst);
    }
    return series;
}

} // namespace burst
