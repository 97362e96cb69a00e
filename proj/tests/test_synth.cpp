#include "burstkit/synth.hpp"

#include "burstkit/phase.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace burst;

namespace {

NodeProcessSpec scripted(std::vector<std::uint32_t> weekly, std::int64_t start = 0,
                         std::uint64_t seed = 1) {
    NodeProcessSpec s;
    s.kind = ProcessKind::Scripted;
    s.weekly = std::move(weekly);
    s.start_ts = start;
    s.horizon_ts = start + static_cast<std::int64_t>(s.weekly.size()) * kWeekSeconds;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("scripted generation hits each week's count exactly") {
    auto spec = scripted({3, 8, 0, 4}, 2 * kWeekSeconds, 9);
    auto times = gen_event_times(spec);
    REQUIRE(times.size() == 15);
    std::vector<int> per_week(4, 0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i) CHECK(times[i] >= times[i - 1]); // sorted
        auto w = (times[i] - spec.start_ts) / kWeekSeconds;
        REQUIRE(w >= 0);
        REQUIRE(w < 4);
        ++per_week[static_cast<std::size_t>(w)];
    }
    CHECK(per_week == std::vector<int>{3, 8, 0, 4});
}

TEST_CASE("scripted generation truncates at the horizon") {
    auto spec = scripted({5, 5}, 0, 3);
    spec.horizon_ts = kWeekSeconds; // keep only week 0
    auto times = gen_event_times(spec);
    CHECK(times.size() == 5);
    for (auto t : times) CHECK(t < kWeekSeconds);
}

TEST_CASE("poisson event count concentrates around rate * span") {
    NodeProcessSpec spec;
    spec.kind = ProcessKind::Poisson;
    spec.rate = 1.0 / 3600.0;
    spec.start_ts = 0;
    spec.horizon_ts = 20 * kWeekSeconds;
    spec.seed = 12345;
    auto times = gen_event_times(spec);
    const double expect = spec.rate * static_cast<double>(spec.horizon_ts);
    CHECK(static_cast<double>(times.size()) == doctest::Approx(expect).epsilon(0.03));
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] >= times[i - 1]);
}

TEST_CASE("bursty gaps follow the cutoff-pareto law" * doctest::test_suite("slow")) {
    NodeProcessSpec spec;
    spec.kind = ProcessKind::Bursty;
    spec.alpha = 1.2;
    spec.lambda_s = 1e5;
    spec.xmin_s = 100.0;
    spec.start_ts = 0;
    spec.horizon_ts = 20000000;
    spec.seed = 99;
    auto times = gen_event_times(spec);
    REQUIRE(times.size() > 1000);
    std::vector<double> gaps;
    gaps.reserve(times.size());
    for (std::size_t i = 1; i < times.size(); ++i)
        gaps.push_back(static_cast<double>(times[i] - times[i - 1]));
    std::sort(gaps.begin(), gaps.end());
    // integer flooring perturbs each gap by at most one second, invisible at
    // xmin = 100; the K-S distance should look like sampling noise
    double d = oracle::ks_against(
        gaps, [&](double t) { return oracle::cdf_quad(t, 1.2, 1e5, 100.0); });
    CHECK(d < 2.0 / std::sqrt(static_cast<double>(gaps.size())));
}

TEST_CASE("generator guards: horizon, rates, start") {
    NodeProcessSpec spec;
    spec.kind = ProcessKind::Poisson;
    spec.rate = 1.0;
    spec.start_ts = 10;
    spec.horizon_ts = 10;
    CHECK_THROWS_AS(gen_event_times(spec), std::invalid_argument);
    spec.horizon_ts = 20;
    spec.rate = 0.0;
    CHECK_THROWS_AS(gen_event_times(spec), std::invalid_argument);
    spec.rate = 1.0;
    spec.start_ts = -1;
    CHECK_THROWS_AS(gen_event_times(spec), std::invalid_argument);

    NodeProcessSpec bad;
    bad.kind = ProcessKind::Bursty;
    bad.horizon_ts = 100;
    bad.alpha = 1.0;
    bad.lambda_s = 0.0;
    bad.xmin_s = 1.0;
    CHECK_THROWS_AS(gen_event_times(bad), std::invalid_argument);
}

TEST_CASE("anchored trace pins the epoch to the generation clock") {
    SynthConfig cfg;
    NodeProcessSpec p;
    p.kind = ProcessKind::Poisson;
    p.rate = 1e-4; // ~180 events, comfortably under the 500-pair pool
    p.start_ts = 3 * kWeekSeconds;
    p.horizon_ts = 6 * kWeekSeconds;
    cfg.nodes = {p};
    cfg.sink_nodes = 500;
    cfg.seed = 4;
    auto res = gen_trace(cfg);
    CHECK(res.trace.epoch == 0);
    auto series = build_node_series(res.trace);
    // node 0 is the analysis node; the anchor pair holds the two highest ids
    REQUIRE(series.front().node == 0);
    CHECK(series.front().join_week == 3);
}

TEST_CASE("sink pools keep analysis series equal to their own processes") {
    SynthConfig cfg;
    cfg.nodes = {scripted({3, 8, 8, 4, 0}, 0, 0), scripted({1, 1, 1, 1, 1}, 0, 0)};
    cfg.sink_nodes = 60;
    cfg.seed = 7;
    auto res = gen_trace(cfg);

    // every non-anchor edge joins an analysis node to a sink
    const NodeId anchor_lo = res.analysis_count + res.sink_count;
    for (const auto& ev : res.trace.events) {
        if (ev.src >= anchor_lo || ev.dst >= anchor_lo) {
            CHECK(ev.ts == 0); // anchor edge
            continue;
        }
        bool src_analysis = ev.src < res.analysis_count;
        bool dst_analysis = ev.dst < res.analysis_count;
        CHECK(src_analysis != dst_analysis);
    }

    auto series = build_node_series(res.trace);
    REQUIRE(series[0].node == 0);
    CHECK(series[0].join_week == 0);
    CHECK(series[0].weekly == std::vector<std::uint32_t>{3, 8, 8, 4, 0});

    auto tl = classify_phases(series[0]);
    CHECK(tl.s == std::vector<Phase>{Phase::Accelerating, Phase::Accelerating, Phase::Cruising,
                                     Phase::Decelerating, Phase::Decelerating});
}

TEST_CASE("generation is deterministic and thread-count independent") {
    SynthConfig cfg;
    for (int i = 0; i < 12; ++i) {
        NodeProcessSpec p;
        p.kind = ProcessKind::Poisson;
        p.rate = 2e-5;
        p.start_ts = 0;
        p.horizon_ts = 10 * kWeekSeconds;
        cfg.nodes.push_back(p);
    }
    cfg.sink_nodes = 300;
    cfg.seed = 2024;
    auto a = gen_trace(cfg, 1);
    auto b = gen_trace(cfg, 1);
    auto c = gen_trace(cfg, 4);
    CHECK(a.trace.events == b.trace.events);
    CHECK(a.trace.events == c.trace.events);
    CHECK(a.trace.nodes == c.trace.nodes);

    SynthConfig other = cfg;
    other.seed = 2025;
    auto d = gen_trace(other);
    CHECK(a.trace.events != d.trace.events);
}

TEST_CASE("two lonely nodes can pair once, then the pool is exhausted") {
    SynthConfig cfg;
    cfg.nodes = {scripted({1}, 0, 11), scripted({0}, 0, 12)};
    cfg.anchor_edge = false;
    cfg.seed = 1;
    auto res = gen_trace(cfg);
    REQUIRE(res.trace.edge_count() == 1);
    CHECK(res.trace.nodes == std::vector<NodeId>{0, 1});

    SynthConfig jam;
    jam.nodes = {scripted({2}, 0, 11), scripted({2}, 0, 12)};
    jam.anchor_edge = false;
    jam.seed = 1;
    CHECK_THROWS_AS(gen_trace(jam), std::runtime_error);
}

TEST_CASE("empty configs are rejected") {
    SynthConfig cfg;
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
    cfg.nodes = {scripted({1})};
    cfg.sink_nodes = 0;
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
}

TEST_CASE("ground-truth sidecar lists every id with its process") {
    SynthConfig cfg;
    cfg.nodes = {scripted({3, 8, 8, 4, 0}, 0, 5)};
    NodeProcessSpec b;
    b.kind = ProcessKind::Bursty;
    b.alpha = 1.5;
    b.lambda_s = 1e6;
    b.xmin_s = 1.0;
    b.horizon_ts = kWeekSeconds;
    cfg.nodes.push_back(b);
    cfg.sink_nodes = 2;
    cfg.anchor_edge = true;

    const char* path = "gt_test.csv";
    write_ground_truth(path, cfg);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    in.close();
    std::remove(path);

    REQUIRE(lines.size() == 7); // header + 2 nodes + 2 sinks + 2 anchors
    CHECK(lines[0] == "node,kind,rate,alpha,lambda,xmin,start_ts,horizon_ts,weekly");
    CHECK(lines[1].find("0,scripted,") == 0);
    CHECK(lines[1].find("3;8;8;4;0") != std::string::npos);
    CHECK(lines[2].find("1,bursty,0,1.5,1e+06,1,") == 0);
    CHECK(lines[3] == "2,sink,0,0,0,0,0,0,");
    CHECK(lines[5].find("4,anchor,") == 0);
    CHECK(lines[6].find("5,anchor,") == 0);
}
