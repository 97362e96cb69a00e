#pragma once

#include "burstkit/phase.hpp"
#include "burstkit/trace.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace burst {

using PhaseVec = std::array<double, kNumPhases>; // indexed by Phase

// Share-of-time and share-of-edges statistics.
//
//   phi_l[p]  fraction of all node-weeks labeled p (population)
//   phi_e[p]  fraction of all edge endpoints created during p-weeks
//   psi_l[p]  per node: fraction of its life spent in p
//   psi_e[p]  per node: fraction of its final degree gained in p
//
// phi rows always cover the whole population; the psi distributions and
// their quantiles honor min_degree (0 = everyone).
struct PhaseShares {
    PhaseVec phi_l{};
    PhaseVec phi_e{};
    std::vector<NodeId> nodes; // nodes behind the psi rows (degree filter applied)
    std::vector<PhaseVec> psi_l;
    std::vector<PhaseVec> psi_e;
    PhaseVec psi_l_q{};
    PhaseVec psi_e_q{};
    double q = 0.8;
    std::uint64_t min_degree = 0;
};

std::pair<PhaseVec, PhaseVec> aggregate_shares(const std::vector<PhaseTimeline>& timelines,
                                               const std::vector<NodeSeries>& series);

std::pair<PhaseVec, PhaseVec> node_shares(const PhaseTimeline& tl, const NodeSeries& s);

// Nearest-rank quantile: element at rank ceil(q*n) of the ascending sort.
double quantile(std::vector<double> values, double q);

PhaseShares share_table(const std::vector<PhaseTimeline>& timelines,
                        const std::vector<NodeSeries>& series, double q = 0.8,
                        std::uint64_t min_degree = 0);

struct DegreeBinRow {
    std::uint64_t bin_lo = 0;
    double bin_mid = 0.0;
    double mean = 0.0;
    double median = 0.0;
    std::size_t count = 0;
};

// Mean/median cruising edge share per degree bin [k*bin, (k+1)*bin); empty
// bins are omitted.  Only nodes with final degree >= min_degree enter.
std::vector<DegreeBinRow> cruise_share_vs_degree(const std::vector<PhaseTimeline>& timelines,
                                                 const std::vector<NodeSeries>& series,
                                                 std::uint64_t degree_bin = 10,
                                                 std::uint64_t min_degree = 0);

} // namespace burst
