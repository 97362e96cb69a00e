#pragma once

#include "burstkit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace burst {

inline double sample_exponential(double mu, SplitMix64& rng) {
    return -std::log(rng.uniform01_open0()) / mu;
}

// Pure Pareto on [xmin, inf): density ∝ t^-alpha, alpha > 1
inline double sample_pareto(double alpha, double xmin, SplitMix64& rng) {
    return xmin * std::pow(rng.uniform01_open0(), -1.0 / (alpha - 1.0));
}

// Density ∝ t^-alpha e^(-t/lambda) on [xmin, inf), any real alpha.
//
// Rejection from a Pareto proposal truncated to [xmin, xmin + 60*lambda]
// (the target carries ~e^-60 of its mass beyond the truncation point, far
// below double noise).  Acceptance probability exp(-(t - xmin)/lambda) makes
// the draw exact on the truncated range, and the truncated proposal has a
// proper inverse CDF even for alpha <= 1.
inline double sample_pareto_cutoff(double alpha, double lambda, double xmin, SplitMix64& rng,
                                   int max_attempts = 1000000) {
    if (!(lambda > 0.0) || !(xmin > 0.0))
        throw std::invalid_argument("sample_pareto_cutoff: lambda and xmin must be > 0");
    const double tmax = xmin + 60.0 * lambda;
    const double one_m_a = 1.0 - alpha;
    const double log_ratio = std::log(tmax / xmin);
    for (int i = 0; i < max_attempts; ++i) {
        double u = rng.uniform01();
        double t;
        if (std::fabs(one_m_a) < 1e-9) {
            t = xmin * std::exp(u * log_ratio); // alpha = 1: log-uniform
        } else {
            double r = std::pow(tmax / xmin, one_m_a);
            t = xmin * std::pow(1.0 + u * (r - 1.0), 1.0 / one_m_a);
        }
        if (rng.uniform01() <= std::exp(-(t - xmin) / lambda)) return t;
    }
    throw std::runtime_error("sample_pareto_cutoff: rejection cap exceeded");
}

} // namespace burst
