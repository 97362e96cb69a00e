#include "burstkit/phase_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace burst {

namespace {

void check_aligned(const std::vector<PhaseTimeline>& timelines,
                   const std::vector<NodeSeries>& series) {
    if (timelines.size() != series.size())
        throw std::invalid_argument("timelines and series differ in length");
    for (std::size_t i = 0; i < series.size(); ++i)
        if (timelines[i].node != series[i].node)
            throw std::invalid_argument("timelines and series are not aligned by node");
}

} // namespace

std::pair<PhaseVec, PhaseVec> aggregate_shares(const std::vector<PhaseTimeline>& timelines,
                                               const std::vector<NodeSeries>& series) {
    check_aligned(timelines, series);
    if (timelines.empty()) throw std::invalid_argument("empty population");

    PhaseVec week_count{}, edge_count{};
    double total_weeks = 0.0, total_edges = 0.0;
    for (std::size_t i = 0; i < timelines.size(); ++i) {
        const auto& tl = timelines[i];
        const auto& s = series[i];
        for (std::size_t t = 0; t < tl.s.size(); ++t) {
            auto p = static_cast<std::size_t>(tl.s[t]);
            week_count[p] += 1.0;
            edge_count[p] += static_cast<double>(s.weekly[t]);
        }
        total_weeks += static_cast<double>(tl.s.size());
        total_edges += static_cast<double>(s.final_degree());
    }
    // total_edges = sum of d_i(T) = 2m
    PhaseVec phi_l{}, phi_e{};
    for (std::size_t p = 0; p < kNumPhases; ++p) {
        phi_l[p] = week_count[p] / total_weeks;
        phi_e[p] = edge_count[p] / total_edges;
    }
    return {phi_l, phi_e};
}

std::pair<PhaseVec, PhaseVec> node_shares(const PhaseTimeline& tl, const NodeSeries& s) {
    if (tl.s.size() != s.weekly.size())
        throw std::invalid_argument("timeline and series differ in length");
    const double life = static_cast<double>(tl.s.size());
    const double degree = static_cast<double>(s.final_degree());
    if (life < 1.0) throw std::invalid_argument("empty timeline");
    if (degree < 1.0) throw std::invalid_argument("zero-degree node");

    PhaseVec psi_l{}, psi_e{};
    for (std::size_t t = 0; t < tl.s.size(); ++t) {
        auto p = static_cast<std::size_t>(tl.s[t]);
        psi_l[p] += 1.0;
        psi_e[p] += static_cast<double>(s.weekly[t]);
    }
    for (std::size_t p = 0; p < kNumPhases; ++p) {
        psi_l[p] /= life;
        psi_e[p] /= degree;
    }
    return {psi_l, psi_e};
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must be in (0,1)");
    std::sort(values.begin(), values.end());
    // rank = ceil(q*n), 1-based; tiny slack so q*n landing on an integer is
    // not pushed up a rank by floating-point noise
    auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size()) - 1e-9));
    if (rank == 0) rank = 1;
    return values[rank - 1];
}

PhaseShares share_table(const std::vector<PhaseTimeline>& timelines,
                        const std::vector<NodeSeries>& series, double q,
                        std::uint64_t min_degree) {
    check_aligned(timelines, series);
    PhaseShares out;
    out.q = q;
    out.min_degree = min_degree;
    std::tie(out.phi_l, out.phi_e) = aggregate_shares(timelines, series);

    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].final_degree() < min_degree) continue;
        auto [pl, pe] = node_shares(timelines[i], series[i]);
        out.nodes.push_back(series[i].node);
        out.psi_l.push_back(pl);
        out.psi_e.push_back(pe);
    }
    if (out.nodes.empty()) throw std::invalid_argument("degree filter removed every node");

    std::vector<double> col(out.nodes.size());
    for (std::size_t p = 0; p < kNumPhases; ++p) {
        for (std::size_t i = 0; i < out.psi_l.size(); ++i) col[i] = out.psi_l[i][p];
        out.psi_l_q[p] = quantile(col, q);
        for (std::size_t i = 0; i < out.psi_e.size(); ++i) col[i] = out.psi_e[i][p];
        out.psi_e_q[p] = quantile(col, q);
    }
    return out;
}

std::vector<DegreeBinRow> cruise_share_vs_degree(const std::vector<PhaseTimeline>& timelines,
                                                 const std::vector<NodeSeries>& series,
                                                 std::uint64_t degree_bin,
                                                 std::uint64_t min_degree) {
    check_aligned(timelines, series);
    if (degree_bin == 0) throw std::invalid_argument("degree_bin must be positive");

    std::map<std::uint64_t, std::vector<double>> bins;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::uint64_t deg = series[i].final_degree();
        if (deg < min_degree) continue;
        auto [pl, pe] = node_shares(timelines[i], series[i]);
        (void)pl;
        bins[deg / degree_bin].push_back(pe[static_cast<std::size_t>(Phase::Cruising)]);
    }

    std::vector<DegreeBinRow> rows;
    rows.reserve(bins.size());
    for (auto& [k, vals] : bins) {
        DegreeBinRow row;
        row.bin_lo = k * degree_bin;
        row.bin_mid = static_cast<double>(row.bin_lo) + static_cast<double>(degree_bin) / 2.0;
        row.count = vals.size();
        double sum = 0.0;
        for (double v : vals) sum += v;
        row.mean = sum / static_cast<double>(vals.size());
        std::sort(vals.begin(), vals.end());
        std::size_t n = vals.size();
        row.median = (n % 2 == 1) ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
        rows.push_back(row);
    }
    return rows;
}

} // namespace burst
