#pragma once

#include "burstkit/phase.hpp"

#include <cstddef>
#include <vector>

namespace burst {

struct PowerLawFitResult {
    double alpha = 0.0;   // exponent, > 1 on a valid fit
    double xmin = 0.0;    // chosen lower cutoff
    double ks_stat = 0.0; // tail K-S distance at the chosen cutoff
    std::size_t n_tail = 0;
};

enum class MagnitudeKind { Acc, Dec };

// Pooled acceleration magnitudes over acc-labeled node-weeks (or |a| over
// dec-labeled ones).  Throws when no such weeks exist.
std::vector<double> collect_magnitudes(const std::vector<PhaseTimeline>& timelines,
                                       MagnitudeKind kind);

struct PowerLawOptions {
    std::size_t min_tail = 50; // smallest admissible tail
    // Cap on distinct-value cutoff candidates; when exceeded, candidates are
    // thinned evenly by rank (0 = try every distinct value).  The scan is
    // O(candidates x tail), quadratic in n without a cap.
    std::size_t max_candidates = 1024;
    unsigned n_threads = 1;
};

// MLE at a fixed cutoff: alpha = 1 + n_tail / sum ln(x_i/xmin) over the tail
// x_i >= xmin.  Throws on an empty or degenerate (all-equal) tail.
PowerLawFitResult fit_powerlaw_at(const std::vector<double>& samples, double xmin);

// Cutoff scan: for each candidate xmin, fit alpha and measure the K-S
// distance between the tail and the fitted CDF; the smallest distance wins,
// ties to the smaller xmin.  Throws if no candidate leaves min_tail samples.
PowerLawFitResult fit_powerlaw(const std::vector<double>& samples,
                               const PowerLawOptions& opts = {});

struct CcdfPoint {
    double value = 0.0;
    double tail_prob = 0.0; // P(X >= value)
};

// One point per distinct value, ascending; tail_prob starts at 1.
std::vector<CcdfPoint> ccdf(const std::vector<double>& samples);

} // namespace burst
