#pragma once

#include "burstkit/trace.hpp"

#include <cstdint>
#include <vector>

namespace burst {

// Weekly activity phases, derived from the discrete second difference of the
// cumulative degree.  With a bin width of one week the acceleration at week t
// reduces to n(t) - n(t-1), the change in new-edge count between consecutive
// weeks; the first live week compares against an empty history.
enum class Phase : std::uint8_t { Accelerating = 0, Decelerating = 1, Cruising = 2, Inactive = 3 };

constexpr int kNumPhases = 4;

const char* phase_name(Phase p);

struct PhaseConfig {
    double theta1 = 2.0;  // acceleration above this => accelerating
    double theta2 = -2.0; // acceleration below this => decelerating
    int dt_weeks = 1;     // second-difference step, in bins

    void validate() const; // requires theta2 < 0 < theta1, dt_weeks >= 1
};

struct PhaseTimeline {
    NodeId node = 0;
    int join_week = 0;
    std::vector<double> a;        // acceleration, index 0 == join_week
    std::vector<Phase> s;         // labels, same indexing
    std::vector<std::uint8_t> c;  // activity bit: 1 iff any new link that week

    int life() const { return static_cast<int>(s.size()); }
};

// a(t) = (d(t) - 2 d(t-dt) + d(t-2dt)) / dt^2 where d is cumulative degree,
// taken as 0 before the join week.  One value per live week.
std::vector<double> degree_acceleration(const NodeSeries& s, int dt_weeks = 1);

// Label rule, applied top to bottom:
//   accelerating  if a >  theta1
//   decelerating  if a <  theta2
//   cruising      if theta2 <= a <= theta1 and active
//   inactive      otherwise
// Deceleration wins over inactivity when both hold (a crash to zero activity
// is the tail end of a burst, not dormancy).
std::vector<Phase> classify_labels(const std::vector<double>& a,
                                   const std::vector<std::uint8_t>& c,
                                   const PhaseConfig& cfg = {});

PhaseTimeline classify_phases(const NodeSeries& s, const PhaseConfig& cfg = {});

std::vector<PhaseTimeline> classify_all(const std::vector<NodeSeries>& series,
                                        const PhaseConfig& cfg = {},
                                        unsigned n_threads = 1);

struct PhaseTransition {
    int week = 0; // absolute week at which the new phase starts
    Phase from = Phase::Inactive;
    Phase to = Phase::Inactive;

    friend bool operator==(const PhaseTransition&, const PhaseTransition&) = default;
};

std::vector<PhaseTransition> phase_transitions(const PhaseTimeline& tl);

// Population summaries for aging/maturation views.  *_by_week vectors are
// indexed by absolute week 0..last_week; *_by_age by weeks since join.
// Nodes lacking any accelerating (resp. decelerating) week contribute
// nothing to the first/peak counts; peak-week ties break to the earliest.
struct AgingReport {
    std::vector<std::uint32_t> n_first_acc;    // by week
    std::vector<std::uint32_t> n_first_dec;
    std::vector<std::uint32_t> n_max_acc;      // week of a node's largest a
    std::vector<std::uint32_t> n_max_dec;      // week of largest -a
    std::vector<double> avg_acc;               // by age: mean a over acc weeks
    std::vector<double> avg_dec;               // by age: mean -a over dec weeks
    std::vector<std::uint32_t> weeks_acc;      // by age: acc week count behind avg_acc
    std::vector<std::uint32_t> weeks_dec;
    std::vector<std::uint32_t> acc_dec_counts; // by week: nodes in acc or dec
    std::vector<std::uint32_t> network_size;   // by week: nodes joined so far
};

AgingReport aging_report(const std::vector<PhaseTimeline>& timelines, int last_week);

} // namespace burst
