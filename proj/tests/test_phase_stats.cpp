#include "burstkit/phase_stats.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <numeric>

using namespace burst;

namespace {

NodeSeries make_series(NodeId id, int join, std::vector<std::uint32_t> weekly) {
    NodeSeries s;
    s.node = id;
    s.join_week = join;
    s.weekly = std::move(weekly);
    return s;
}

// aligned (timelines, series) population from the shared random generator
std::pair<std::vector<PhaseTimeline>, std::vector<NodeSeries>> random_population(SplitMix64& rng,
                                                                                 int n) {
    std::vector<NodeSeries> series;
    series.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) series.push_back(oracle::random_series(rng));
    std::vector<PhaseTimeline> timelines;
    timelines.reserve(series.size());
    for (const auto& s : series) timelines.push_back(classify_phases(s));
    return {std::move(timelines), std::move(series)};
}

} // namespace

TEST_CASE("per-node shares of the [3,8,8,4,0] example") {
    auto s = make_series(7, 1, {3, 8, 8, 4, 0});
    auto tl = classify_phases(s);
    auto [pl, pe] = node_shares(tl, s);
    CHECK(pl[static_cast<int>(Phase::Accelerating)] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(pl[static_cast<int>(Phase::Cruising)] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pl[static_cast<int>(Phase::Decelerating)] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(pl[static_cast<int>(Phase::Inactive)] == 0.0);
    CHECK(pe[static_cast<int>(Phase::Accelerating)] == doctest::Approx(11.0 / 23.0).epsilon(1e-12));
    CHECK(pe[static_cast<int>(Phase::Cruising)] == doctest::Approx(8.0 / 23.0).epsilon(1e-12));
    CHECK(pe[static_cast<int>(Phase::Decelerating)] == doctest::Approx(4.0 / 23.0).epsilon(1e-12));
    CHECK(pe[static_cast<int>(Phase::Inactive)] == 0.0);
}

TEST_CASE("a one-node population makes aggregate and per-node shares coincide") {
    auto s = make_series(3, 0, {3, 8, 8, 4, 0});
    auto tl = classify_phases(s);
    auto [phi_l, phi_e] = aggregate_shares({tl}, {s});
    auto [psi_l, psi_e] = node_shares(tl, s);
    for (int p = 0; p < kNumPhases; ++p) {
        CHECK(phi_l[p] == doctest::Approx(psi_l[p]).epsilon(1e-12));
        CHECK(phi_e[p] == doctest::Approx(psi_e[p]).epsilon(1e-12));
    }
}

TEST_CASE("property: share vectors are distributions") {
    SplitMix64 rng(99);
    for (int rep = 0; rep < 50; ++rep) {
        auto [timelines, series] = random_population(rng, 30);
        auto [phi_l, phi_e] = aggregate_shares(timelines, series);
        CHECK(std::accumulate(phi_l.begin(), phi_l.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::accumulate(phi_e.begin(), phi_e.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
        for (std::size_t i = 0; i < series.size(); ++i) {
            auto [pl, pe] = node_shares(timelines[i], series[i]);
            CHECK(std::accumulate(pl.begin(), pl.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::accumulate(pe.begin(), pe.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: aggregates are the degree/life weighted means of node shares") {
    SplitMix64 rng(123);
    auto [timelines, series] = random_population(rng, 60);
    auto [phi_l, phi_e] = aggregate_shares(timelines, series);
    double total_weeks = 0.0, total_edges = 0.0;
    PhaseVec wl{}, we{};
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto [pl, pe] = node_shares(timelines[i], series[i]);
        const double life = static_cast<double>(series[i].life());
        const double deg = static_cast<double>(series[i].final_degree());
        for (int p = 0; p < kNumPhases; ++p) {
            wl[p] += pl[p] * life;
            we[p] += pe[p] * deg;
        }
        total_weeks += life;
        total_edges += deg;
    }
    for (int p = 0; p < kNumPhases; ++p) {
        CHECK(phi_l[p] == doctest::Approx(wl[p] / total_weeks).epsilon(1e-9));
        CHECK(phi_e[p] == doctest::Approx(we[p] / total_edges).epsilon(1e-9));
    }
}

TEST_CASE("inactive weeks carry no edges, so their edge share is exactly zero") {
    SplitMix64 rng(7);
    auto [timelines, series] = random_population(rng, 40);
    auto [phi_l, phi_e] = aggregate_shares(timelines, series);
    (void)phi_l;
    CHECK(phi_e[static_cast<int>(Phase::Inactive)] == 0.0);
}

TEST_CASE("nearest-rank quantile picks the ceil(q*n)-th order statistic") {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(quantile(v, 0.8) == 8.0);
    CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == 3.0);   // rank ceil(2.5) = 3
    CHECK(quantile({1, 2, 3, 4, 5}, 0.8) == 4.0);   // q*n = 4 exactly: rank 4, not 5
    CHECK(quantile({5, 1, 3}, 0.34) == 3.0);        // unsorted input, rank ceil(1.02) = 2
    CHECK(quantile({42}, 0.8) == 42.0);
    CHECK_THROWS_AS(quantile({}, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(quantile({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile({1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("quantile of a large uniform sample sits near q" * doctest::test_suite("slow")) {
    SplitMix64 rng(2718);
    std::vector<double> v(100000);
    for (auto& x : v) x = rng.uniform01();
    CHECK(quantile(v, 0.8) == doctest::Approx(0.8).epsilon(0.01));
    CHECK(quantile(v, 0.2) == doctest::Approx(0.2).epsilon(0.01));
}

TEST_CASE("share table: 0.8-quantile of acc life share across five hand nodes") {
    // acc life shares: 0.5, 1.0, 0.0, 1/3, 0.25 -> sorted rank 4 of 5 is 0.5
    std::vector<NodeSeries> series{
        make_series(1, 0, {3, 3}),
        make_series(2, 0, {3}),
        make_series(3, 0, {1}),
        make_series(4, 0, {3, 3, 3}),
        make_series(5, 0, {3, 3, 3, 3}),
    };
    std::vector<PhaseTimeline> timelines;
    for (const auto& s : series) timelines.push_back(classify_phases(s));

    auto full = share_table(timelines, series, 0.8, 0);
    CHECK(full.nodes.size() == 5);
    CHECK(full.psi_l_q[static_cast<int>(Phase::Accelerating)] == doctest::Approx(0.5).epsilon(1e-12));

    // degrees are 6,3,1,9,12; filtering at 4 keeps nodes 1,4,5 with acc
    // shares {0.5, 1/3, 0.25}: rank ceil(2.4) = 3 -> 0.5
    auto filt = share_table(timelines, series, 0.8, 4);
    CHECK(filt.nodes == std::vector<NodeId>{1, 4, 5});
    CHECK(filt.psi_l_q[static_cast<int>(Phase::Accelerating)] == doctest::Approx(0.5).epsilon(1e-12));
    for (int p = 0; p < kNumPhases; ++p) {
        // the aggregate rows ignore the degree filter
        CHECK(filt.phi_l[p] == full.phi_l[p]);
        CHECK(filt.phi_e[p] == full.phi_e[p]);
    }

    CHECK_THROWS_AS(share_table(timelines, series, 0.8, 1000), std::invalid_argument);
}

TEST_CASE("cruising edge share vs final degree bins") {
    // two-week nodes [1, d-1]: week 0 cruises with 1 edge, week 1 accelerates
    std::vector<NodeSeries> series{
        make_series(1, 0, {1, 14}), // degree 15 -> bin [10,20)
        make_series(2, 0, {1, 16}), // degree 17 -> bin [10,20)
        make_series(3, 0, {1, 24}), // degree 25 -> bin [20,30)
    };
    std::vector<PhaseTimeline> timelines;
    for (const auto& s : series) timelines.push_back(classify_phases(s));

    auto rows = cruise_share_vs_degree(timelines, series, 10, 0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].bin_lo == 10);
    CHECK(rows[0].bin_mid == 15.0);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].mean == doctest::Approx((1.0 / 15.0 + 1.0 / 17.0) / 2.0).epsilon(1e-12));
    CHECK(rows[0].median == doctest::Approx((1.0 / 15.0 + 1.0 / 17.0) / 2.0).epsilon(1e-12));
    CHECK(rows[1].bin_lo == 20);
    CHECK(rows[1].count == 1);
    CHECK(rows[1].mean == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
    CHECK(rows[1].median == doctest::Approx(1.0 / 25.0).epsilon(1e-12));

    auto filtered = cruise_share_vs_degree(timelines, series, 10, 16);
    REQUIRE(filtered.size() == 2);
    CHECK(filtered[0].count == 1);
    CHECK(filtered[0].mean == doctest::Approx(1.0 / 17.0).epsilon(1e-12));

    CHECK_THROWS_AS(cruise_share_vs_degree(timelines, series, 0, 0), std::invalid_argument);
}

TEST_CASE("misaligned or empty populations are rejected") {
    auto s = make_series(1, 0, {2});
    auto tl = classify_phases(s);
    auto other = tl;
    other.node = 9;
    CHECK_THROWS_AS(aggregate_shares({other}, {s}), std::invalid_argument);
    CHECK_THROWS_AS(aggregate_shares({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(node_shares(tl, make_series(1, 0, {2, 2})), std::invalid_argument);
}
