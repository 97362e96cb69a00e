#include "burstkit/interevent.hpp"

#include "burstkit/gamma.hpp"
#include "burstkit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace burst {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sufficient statistics: the cutoff-Pareto log-likelihood is
//   -n ln Z(alpha, lambda) - alpha * sum(ln t) - sum(t) / lambda
// so each optimizer step costs one normalization evaluation.
struct GapStats {
    std::size_t n = 0;
    double sum = 0.0;
    double sum_log = 0.0;
    double min = 0.0;
    double max = 0.0;

    explicit GapStats(const std::vector<double>& gaps) {
        n = gaps.size();
        min = std::numeric_limits<double>::infinity();
        max = 0.0;
        for (double g : gaps) {
            sum += g;
            sum_log += std::log(g);
            min = std::min(min, g);
            max = std::max(max, g);
        }
    }
};

double pareto_loglik(double alpha, double lambda, double xmin, const GapStats& st) {
    double ll = -static_cast<double>(st.n) * pareto_cutoff_log_norm(alpha, lambda, xmin) -
                alpha * st.sum_log - st.sum / lambda;
    return std::isfinite(ll) ? ll : kNegInf;
}

// float-safe bin index: largest k with k*w <= x
long bin_index(double x, double w) {
    long k = static_cast<long>(std::floor(x / w));
    while ((static_cast<double>(k) + 1.0) * w <= x) ++k;
    while (static_cast<double>(k) * w > x) --k;
    return k;
}

double median_sorted(const std::vector<double>& v) {
    std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

const char* model_name(Model m) {
    return m == Model::Exponential ? "exponential" : "pareto_cutoff";
}

std::vector<std::vector<std::int64_t>> node_event_times(const Trace& trace) {
    const auto& nodes = trace.nodes;
    auto index_of = [&nodes](NodeId id) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };
    std::vector<std::vector<std::int64_t>> out(nodes.size());
    std::vector<std::uint32_t> counts(nodes.size(), 0);
    for (const auto& ev : trace.events) {
        ++counts[index_of(ev.src)];
        ++counts[index_of(ev.dst)];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].reserve(counts[i]);
    // events are sorted by ts, so each per-node list comes out sorted
    for (const auto& ev : trace.events) {
        out[index_of(ev.src)].push_back(ev.ts);
        out[index_of(ev.dst)].push_back(ev.ts);
    }
    return out;
}

std::optional<InterEventSample> extract_gaps(NodeId node,
                                             const std::vector<std::int64_t>& sorted_ts,
                                             int age_weeks, std::uint64_t min_degree,
                                             double resolution) {
    if (sorted_ts.size() < min_degree) return std::nullopt;
    InterEventSample s;
    s.node = node;
    s.final_degree = sorted_ts.size();
    s.age_weeks = age_weeks;
    s.gaps.reserve(sorted_ts.size() - 1);
    for (std::size_t i = 1; i < sorted_ts.size(); ++i) {
        double g = static_cast<double>(sorted_ts[i] - sorted_ts[i - 1]);
        s.gaps.push_back(std::max(g, resolution));
    }
    return s;
}

FitResult fit_exponential(const InterEventSample& sample) {
    const std::size_t n = sample.gaps.size();
    if (n < 2) throw std::invalid_argument("fit_exponential: need at least 2 gaps");
    double sum = 0.0;
    for (double g : sample.gaps) sum += g;
    FitResult fit;
    fit.model = Model::Exponential;
    fit.mu = static_cast<double>(n) / sum;
    fit.loglik = static_cast<double>(n) * std::log(fit.mu) - fit.mu * sum;
    fit.aic = 2.0 - 2.0 * fit.loglik;
    return fit;
}

FitResult fit_pareto_cutoff(const InterEventSample& sample, double xmin_in,
                            const ParetoOptions& opts) {
    const GapStats st(sample.gaps);
    if (st.n < 5) throw std::invalid_argument("fit_pareto_cutoff: need at least 5 gaps");
    const double xmin = xmin_in > 0.0 ? xmin_in : st.min;
    if (st.min < xmin)
        throw std::invalid_argument("fit_pareto_cutoff: gap below xmin");

    const double a_lo = opts.alpha_lo, a_hi = opts.alpha_hi;
    const double l_lo = opts.lambda_lo > 0.0 ? opts.lambda_lo : xmin / 100.0;
    const double l_hi = opts.lambda_hi > 0.0 ? opts.lambda_hi : 1e4 * st.max;
    if (!(a_lo < a_hi) || !(l_lo < l_hi))
        throw std::invalid_argument("fit_pareto_cutoff: bad search bounds");
    const double ln_lo = std::log(l_lo), ln_hi = std::log(l_hi);

    auto ll_at = [&](double alpha, double ln_lambda) {
        return pareto_loglik(alpha, std::exp(ln_lambda), xmin, st);
    };

    struct Point {
        double a = 0.0, ln_l = 0.0, ll = kNegInf;
    };

    std::vector<Point> starts;
    double step_a0, step_l0;
    if (opts.warm) {
        if (!(opts.lambda0 > 0.0))
            throw std::invalid_argument("fit_pareto_cutoff: warm start needs lambda0 > 0");
        Point p;
        p.a = std::clamp(opts.alpha0, a_lo, a_hi);
        p.ln_l = std::clamp(std::log(opts.lambda0), ln_lo, ln_hi);
        p.ll = ll_at(p.a, p.ln_l);
        starts.push_back(p);
        step_a0 = 0.1;
        step_l0 = 0.25;
    } else {
        const int ga = std::max(2, opts.grid_alpha), gl = std::max(2, opts.grid_lambda);
        const double da = (a_hi - a_lo) / (ga - 1), dl = (ln_hi - ln_lo) / (gl - 1);
        std::vector<Point> grid;
        grid.reserve(static_cast<std::size_t>(ga) * gl);
        for (int i = 0; i < ga; ++i)
            for (int j = 0; j < gl; ++j) {
                Point p;
                p.a = a_lo + i * da;
                p.ln_l = ln_lo + j * dl;
                p.ll = ll_at(p.a, p.ln_l);
                grid.push_back(p);
            }
        std::partial_sort(grid.begin(),
                          grid.begin() + std::min<std::size_t>(grid.size(),
                                                               std::max(1, opts.refine_starts)),
                          grid.end(), [](const Point& x, const Point& y) { return x.ll > y.ll; });
        grid.resize(std::min<std::size_t>(grid.size(), std::max(1, opts.refine_starts)));
        starts = std::move(grid);
        step_a0 = da / 2.0;
        step_l0 = dl / 2.0;
    }

    Point best;
    bool converged = false;
    for (const auto& start : starts) {
        Point cur = start;
        double sa = step_a0, sl = step_l0;
        int iter = 0;
        for (; iter < opts.max_iter; ++iter) {
            if (sa < 1e-8 && sl < 1e-8) break;
            Point cand = cur;
            const double probes[4][2] = {{cur.a + sa, cur.ln_l},
                                         {cur.a - sa, cur.ln_l},
                                         {cur.a, cur.ln_l + sl},
                                         {cur.a, cur.ln_l - sl}};
            for (const auto& pr : probes) {
                double a = std::clamp(pr[0], a_lo, a_hi);
                double l = std::clamp(pr[1], ln_lo, ln_hi);
                double ll = ll_at(a, l);
                if (ll > cand.ll) cand = {a, l, ll};
            }
            if (cand.ll > cur.ll) {
                cur = cand;
            } else {
                sa /= 2.0;
                sl /= 2.0;
            }
        }
        bool ran_out = iter >= opts.max_iter;
        if (cur.ll > best.ll) {
            best = cur;
            converged = !ran_out;
        }
    }

    FitResult fit;
    fit.model = Model::ParetoCutoff;
    fit.alpha = best.a;
    fit.lambda = std::exp(best.ln_l);
    fit.xmin = xmin;
    fit.loglik = best.ll;
    fit.aic = 4.0 - 2.0 * fit.loglik;
    fit.converged = converged;
    fit.at_bound = (best.a - a_lo) < 1e-6 * (a_hi - a_lo) ||
                   (a_hi - best.a) < 1e-6 * (a_hi - a_lo) ||
                   (best.ln_l - ln_lo) < 1e-6 * (ln_hi - ln_lo) ||
                   (ln_hi - best.ln_l) < 1e-6 * (ln_hi - ln_lo);
    return fit;
}

const FitResult& select_model(const FitResult& fit_exp, const FitResult& fit_pareto) {
    return fit_pareto.aic < fit_exp.aic ? fit_pareto : fit_exp;
}

NodeFit fit_node(const InterEventSample& sample, const ParetoOptions& opts) {
    NodeFit nf;
    nf.node = sample.node;
    nf.final_degree = sample.final_degree;
    nf.age_weeks = sample.age_weeks;
    nf.exp_fit = fit_exponential(sample);
    nf.pareto_fit = fit_pareto_cutoff(sample, 0.0, opts);
    nf.selected = select_model(nf.exp_fit, nf.pareto_fit).model;
    return nf;
}

double ks_statistic(std::vector<double> gaps, const FitResult& fit) {
    if (gaps.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        double f = fit.model == Model::Exponential
                       ? 1.0 - std::exp(-fit.mu * gaps[i])
                       : pareto_cutoff_cdf(gaps[i], fit.alpha, fit.lambda, fit.xmin);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

std::pair<double, double> ks_test(const InterEventSample& sample, const FitResult& fit,
                                  const KsOptions& opts) {
    if (opts.n_bootstrap <= 0) throw std::invalid_argument("ks_test: n_bootstrap must be > 0");
    const double d0 = ks_statistic(sample.gaps, fit);

    SplitMix64 rng(opts.seed);
    const std::size_t n = sample.gaps.size();
    std::vector<double> res(n);
    InterEventSample tmp;
    tmp.node = sample.node;

    ParetoOptions warm;
    warm.warm = true;
    warm.alpha0 = fit.alpha;
    warm.lambda0 = fit.lambda;

    int exceed = 0;
    for (int b = 0; b < opts.n_bootstrap; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            double g = fit.model == Model::Exponential
                           ? sample_exponential(fit.mu, rng)
                           : sample_pareto_cutoff(fit.alpha, fit.lambda, fit.xmin, rng);
            if (opts.resample_resolution > 0.0) {
                double r = opts.resample_resolution;
                g = std::max(r, std::floor(g / r) * r);
            }
            res[i] = g;
        }
        tmp.gaps = res;
        FitResult refit = fit.model == Model::Exponential
                              ? fit_exponential(tmp)
                              : fit_pareto_cutoff(tmp, 0.0, warm);
        if (ks_statistic(res, refit) >= d0) ++exceed;
    }
    return {d0, static_cast<double>(exceed) / static_cast<double>(opts.n_bootstrap)};
}

std::vector<HistBin> alpha_distribution(const std::vector<double>& alphas, double bin_width) {
    if (alphas.empty()) throw std::invalid_argument("alpha_distribution: empty fit set");
    if (!(bin_width > 0.0)) throw std::invalid_argument("alpha_distribution: bad bin width");
    std::map<long, std::size_t> bins;
    for (double a : alphas) ++bins[bin_index(a, bin_width)];
    std::vector<HistBin> out;
    out.reserve(bins.size());
    for (auto [k, c] : bins) out.push_back({static_cast<double>(k) * bin_width, c});
    return out;
}

std::vector<CovariateBinRow> alpha_vs_covariate(const std::vector<NodeFit>& fits, Covariate cov,
                                                double bin_width) {
    if (fits.empty()) throw std::invalid_argument("alpha_vs_covariate: empty fit set");
    const double w = bin_width > 0.0 ? bin_width : (cov == Covariate::FinalDegree ? 10.0 : 1.0);
    std::map<long, std::vector<double>> bins;
    for (const auto& nf : fits) {
        double v = cov == Covariate::FinalDegree ? static_cast<double>(nf.final_degree)
                                                 : static_cast<double>(nf.age_weeks);
        bins[bin_index(v, w)].push_back(nf.chosen().alpha);
    }
    std::vector<CovariateBinRow> out;
    out.reserve(bins.size());
    for (auto& [k, vals] : bins) {
        CovariateBinRow row;
        row.bin_lo = static_cast<double>(k) * w;
        row.count = vals.size();
        double sum = 0.0;
        for (double v : vals) sum += v;
        row.mean = sum / static_cast<double>(vals.size());
        double ss = 0.0;
        for (double v : vals) ss += (v - row.mean) * (v - row.mean);
        row.stddev = std::sqrt(ss / static_cast<double>(vals.size()));
        std::sort(vals.begin(), vals.end());
        row.median = median_sorted(vals);
        out.push_back(row);
    }
    return out;
}

} // namespace burst
