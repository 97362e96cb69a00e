#pragma once

#include "burstkit/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace burst {

// Gaps between a node's consecutive incident events, in seconds.
struct InterEventSample {
    NodeId node = 0;
    std::vector<double> gaps;       // all >= resolution
    std::uint64_t final_degree = 0; // incident event count
    int age_weeks = 0;              // weeks elapsed since the node's first event
};

enum class Model { Exponential, ParetoCutoff };

const char* model_name(Model m);

struct FitResult {
    Model model = Model::Exponential;
    double mu = 0.0;     // exponential rate
    double alpha = 0.0;  // pareto exponent
    double lambda = 0.0; // cutoff scale
    double xmin = 0.0;   // support lower bound (pareto); 0 for exponential
    double loglik = 0.0;
    double aic = 0.0;
    double ks_stat = -1.0; // negative until a K-S test fills them in
    double ks_p = -1.0;
    bool converged = true;
    bool at_bound = false;
};

// Per-node event timestamps (sorted), aligned with trace.nodes.
std::vector<std::vector<std::int64_t>> node_event_times(const Trace& trace);

// Gap extraction with the degree filter; returns nothing for nodes below
// min_degree.  Zero gaps are clamped up to `resolution` rather than dropped
// (dropping them would erase exactly the burst peaks under study).
std::optional<InterEventSample> extract_gaps(NodeId node,
                                             const std::vector<std::int64_t>& sorted_ts,
                                             int age_weeks, std::uint64_t min_degree = 15,
                                             double resolution = 1.0);

FitResult fit_exponential(const InterEventSample& sample);

struct ParetoOptions {
    double alpha_lo = 0.1;
    double alpha_hi = 5.0;
    double lambda_lo = 0.0; // 0 => xmin / 100
    double lambda_hi = 0.0; // 0 => 1e4 * max(gaps)
    int grid_alpha = 20;    // coarse-grid resolution
    int grid_lambda = 20;
    int refine_starts = 3;  // descend from this many best grid cells
    int max_iter = 500;     // compass-search iterations per start
    // warm start: skip the coarse grid, descend from (alpha0, lambda0)
    bool warm = false;
    double alpha0 = 0.0;
    double lambda0 = 0.0;
};

// Maximum-likelihood fit of f(t) = C t^-alpha e^(-t/lambda) on [xmin, inf).
// xmin_in = 0 uses min(gaps).  Coarse (alpha, ln lambda) grid then compass
// refinement; `converged` false when the iteration cap was hit, `at_bound`
// true when the optimum sits on the search boundary.
FitResult fit_pareto_cutoff(const InterEventSample& sample, double xmin_in = 0.0,
                            const ParetoOptions& opts = {});

// Smaller AIC wins; exact tie goes to the exponential (fewer parameters).
const FitResult& select_model(const FitResult& fit_exp, const FitResult& fit_pareto);

// Both candidate fits plus the selection, with the sample's covariates.
struct NodeFit {
    NodeId node = 0;
    std::uint64_t final_degree = 0;
    int age_weeks = 0;
    FitResult exp_fit;
    FitResult pareto_fit;
    Model selected = Model::Exponential;

    const FitResult& chosen() const {
        return selected == Model::Exponential ? exp_fit : pareto_fit;
    }
};

NodeFit fit_node(const InterEventSample& sample, const ParetoOptions& opts = {});

// sup |ECDF - fitted CDF| over the sample (gaps need not be pre-sorted)
double ks_statistic(std::vector<double> gaps, const FitResult& fit);

struct KsOptions {
    int n_bootstrap = 1000;
    std::uint64_t seed = 0;
    // > 0: floor bootstrap resamples onto this grid (and clamp up to it),
    // mirroring the integer-second resolution of trace-derived gaps
    double resample_resolution = 0.0;
};

// Semi-parametric bootstrap: resample |gaps| draws from the fitted model,
// refit that model family, measure the K-S distance; ks_p is the fraction of
// resample distances >= the observed one.
std::pair<double, double> ks_test(const InterEventSample& sample, const FitResult& fit,
                                  const KsOptions& opts = {});

struct HistBin {
    double left = 0.0;
    std::size_t count = 0;
};

// Histogram of fitted exponents; only nonzero bins, ascending by left edge.
std::vector<HistBin> alpha_distribution(const std::vector<double>& alphas,
                                        double bin_width = 0.05);

enum class Covariate { FinalDegree, AgeWeeks };

struct CovariateBinRow {
    double bin_lo = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0; // population form
    std::size_t count = 0;
};

// Exponent vs degree (bin 10) or age (bin 1); bin_width = 0 uses the default
// for the covariate.  Empty bins are omitted.
std::vector<CovariateBinRow> alpha_vs_covariate(const std::vector<NodeFit>& fits, Covariate cov,
                                                double bin_width = 0.0);

} // namespace burst
