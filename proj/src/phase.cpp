#include "burstkit/phase.hpp"

#include "burstkit/util.hpp"

#include <cassert>
#include <stdexcept>

namespace burst {

const char* phase_name(Phase p) {
    switch (p) {
    case Phase::Accelerating: return "acc";
    case Phase::Decelerating: return "dec";
    case Phase::Cruising: return "cruise";
    case Phase::Inactive: return "inact";
    }
    return "?";
}

void PhaseConfig::validate() const {
    if (!(theta2 < 0.0 && 0.0 < theta1))
        throw std::invalid_argument("phase thresholds must satisfy theta2 < 0 < theta1");
    if (dt_weeks < 1) throw std::invalid_argument("dt_weeks must be >= 1");
}

std::vector<double> degree_acceleration(const NodeSeries& s, int dt_weeks) {
    if (dt_weeks < 1) throw std::invalid_argument("dt_weeks must be >= 1");
    const int life = s.life();
    // cumulative degree over the live range; d = 0 before join
    std::vector<std::uint64_t> cum(static_cast<std::size_t>(life));
    std::uint64_t acc = 0;
    for (int t = 0; t < life; ++t) {
        acc += s.weekly[static_cast<std::size_t>(t)];
        cum[static_cast<std::size_t>(t)] = acc;
    }
    auto d = [&](int t) -> double {
        if (t < 0) return 0.0;
        return static_cast<double>(cum[static_cast<std::size_t>(t)]);
    };
    const double dt = dt_weeks;
    std::vector<double> a(static_cast<std::size_t>(life));
    for (int t = 0; t < life; ++t)
        a[static_cast<std::size_t>(t)] =
            (d(t) - 2.0 * d(t - dt_weeks) + d(t - 2 * dt_weeks)) / (dt * dt);
    return a;
}

std::vector<Phase> classify_labels(const std::vector<double>& a,
                                   const std::vector<std::uint8_t>& c,
                                   const PhaseConfig& cfg) {
    cfg.validate();
    if (a.size() != c.size())
        throw std::invalid_argument("acceleration and activity vectors differ in length");
    std::vector<Phase> s(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t] > cfg.theta1) {
            // a > theta1 > 0 forces new links this week, so acc never
            // collides with the inactive case
            assert(c[t] == 1);
            s[t] = Phase::Accelerating;
        } else if (a[t] < cfg.theta2) {
            s[t] = Phase::Decelerating;
        } else if (c[t]) {
            s[t] = Phase::Cruising;
        } else {
            s[t] = Phase::Inactive;
        }
    }
    return s;
}

PhaseTimeline classify_phases(const NodeSeries& series, const PhaseConfig& cfg) {
    PhaseTimeline tl;
    tl.node = series.node;
    tl.join_week = series.join_week;
    tl.a = degree_acceleration(series, cfg.dt_weeks);
    tl.c.resize(series.weekly.size());
    for (std::size_t t = 0; t < series.weekly.size(); ++t)
        tl.c[t] = series.weekly[t] > 0 ? 1 : 0;
    tl.s = classify_labels(tl.a, tl.c, cfg);
    return tl;
}

std::vector<PhaseTimeline> classify_all(const std::vector<NodeSeries>& series,
                                        const PhaseConfig& cfg, unsigned n_threads) {
    cfg.validate();
    std::vector<PhaseTimeline> out(series.size());
    parallel_for(series.size(), n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = classify_phases(series[i], cfg);
    });
    return out;
}

std::vector<PhaseTransition> phase_transitions(const PhaseTimeline& tl) {
    std::vector<PhaseTransition> out;
    for (std::size_t t = 1; t < tl.s.size(); ++t)
        if (tl.s[t] != tl.s[t - 1])
            out.push_back({tl.join_week + static_cast<int>(t), tl.s[t - 1], tl.s[t]});
    return out;
}

AgingReport aging_report(const std::vector<PhaseTimeline>& timelines, int last_week) {
    if (timelines.empty()) throw std::invalid_argument("no timelines");
    if (last_week < 0) throw std::invalid_argument("last_week must be >= 0");

    AgingReport rep;
    const std::size_t weeks = static_cast<std::size_t>(last_week) + 1;
    std::size_t max_life = 0;
    for (const auto& tl : timelines)
        max_life = std::max(max_life, tl.s.size());

    rep.n_first_acc.assign(weeks, 0);
    rep.n_first_dec.assign(weeks, 0);
    rep.n_max_acc.assign(weeks, 0);
    rep.n_max_dec.assign(weeks, 0);
    rep.acc_dec_counts.assign(weeks, 0);
    rep.network_size.assign(weeks, 0);
    std::vector<double> sum_acc(max_life, 0.0), sum_dec(max_life, 0.0);
    rep.weeks_acc.assign(max_life, 0);
    rep.weeks_dec.assign(max_life, 0);

    for (const auto& tl : timelines) {
        int first_acc = -1, first_dec = -1, argmax_acc = -1, argmax_dec = -1;
        double best_acc = 0.0, best_dec = 0.0;
        for (std::size_t t = 0; t < tl.s.size(); ++t) {
            const int w = tl.join_week + static_cast<int>(t);
            const double a = tl.a[t];
            switch (tl.s[t]) {
            case Phase::Accelerating:
                if (first_acc < 0) first_acc = w;
                if (argmax_acc < 0 || a > best_acc) {
                    best_acc = a;
                    argmax_acc = w;
                }
                sum_acc[t] += a;
                ++rep.weeks_acc[t];
                ++rep.acc_dec_counts[static_cast<std::size_t>(w)];
                break;
            case Phase::Decelerating:
                if (first_dec < 0) first_dec = w;
                if (argmax_dec < 0 || -a > best_dec) {
                    best_dec = -a;
                    argmax_dec = w;
                }
                sum_dec[t] += -a;
                ++rep.weeks_dec[t];
                ++rep.acc_dec_counts[static_cast<std::size_t>(w)];
                break;
            default:
                break;
            }
        }
        if (first_acc >= 0) ++rep.n_first_acc[static_cast<std::size_t>(first_acc)];
        if (first_dec >= 0) ++rep.n_first_dec[static_cast<std::size_t>(first_dec)];
        if (argmax_acc >= 0) ++rep.n_max_acc[static_cast<std::size_t>(argmax_acc)];
        if (argmax_dec >= 0) ++rep.n_max_dec[static_cast<std::size_t>(argmax_dec)];
        ++rep.network_size[static_cast<std::size_t>(tl.join_week)];
    }

    // joins per week -> nodes present by week
    std::uint32_t running = 0;
    for (auto& v : rep.network_size) {
        running += v;
        v = running;
    }

    rep.avg_acc.assign(max_life, 0.0);
    rep.avg_dec.assign(max_life, 0.0);
    for (std::size_t t = 0; t < max_life; ++t) {
        if (rep.weeks_acc[t]) rep.avg_acc[t] = sum_acc[t] / rep.weeks_acc[t];
        if (rep.weeks_dec[t]) rep.avg_dec[t] = sum_dec[t] / rep.weeks_dec[t];
    }
    return rep;
}

} // namespace burst
