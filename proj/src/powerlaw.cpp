#include "burstkit/powerlaw.hpp"

#include "burstkit/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace burst {

std::vector<double> collect_magnitudes(const std::vector<PhaseTimeline>& timelines,
                                       MagnitudeKind kind) {
    std::vector<double> out;
    for (const auto& tl : timelines)
        for (std::size_t t = 0; t < tl.s.size(); ++t) {
            if (kind == MagnitudeKind::Acc && tl.s[t] == Phase::Accelerating)
                out.push_back(tl.a[t]);
            else if (kind == MagnitudeKind::Dec && tl.s[t] == Phase::Decelerating)
                out.push_back(-tl.a[t]);
        }
    if (out.empty()) throw std::invalid_argument("collect_magnitudes: no matching weeks");
    return out;
}

namespace {

// K-S distance of sorted tail [first, last) against F(x) = 1 - (x/xmin)^(1-alpha)
double tail_ks(const double* x, std::size_t n_tail, double xmin, double alpha) {
    const double e = 1.0 - alpha;
    double d = 0.0;
    for (std::size_t j = 0; j < n_tail; ++j) {
        double f = 1.0 - std::pow(x[j] / xmin, e);
        d = std::max(d, f - static_cast<double>(j) / static_cast<double>(n_tail));
        d = std::max(d, static_cast<double>(j + 1) / static_cast<double>(n_tail) - f);
    }
    return d;
}

} // namespace

PowerLawFitResult fit_powerlaw_at(const std::vector<double>& samples, double xmin) {
    if (!(xmin > 0.0)) throw std::invalid_argument("fit_powerlaw_at: xmin must be > 0");
    std::vector<double> tail;
    tail.reserve(samples.size());
    for (double v : samples)
        if (v >= xmin) tail.push_back(v);
    if (tail.empty()) throw std::invalid_argument("fit_powerlaw_at: empty tail");
    std::sort(tail.begin(), tail.end());

    double sum_ln = 0.0;
    for (double v : tail) sum_ln += std::log(v / xmin);
    if (!(sum_ln > 0.0))
        throw std::invalid_argument("fit_powerlaw_at: degenerate tail (all samples equal xmin)");

    PowerLawFitResult r;
    r.n_tail = tail.size();
    r.xmin = xmin;
    r.alpha = 1.0 + static_cast<double>(tail.size()) / sum_ln;
    r.ks_stat = tail_ks(tail.data(), tail.size(), xmin, r.alpha);
    return r;
}

PowerLawFitResult fit_powerlaw(const std::vector<double>& samples, const PowerLawOptions& opts) {
    if (opts.min_tail < 2) throw std::invalid_argument("fit_powerlaw: min_tail must be >= 2");
    std::vector<double> x(samples);
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    if (n < opts.min_tail) throw std::invalid_argument("fit_powerlaw: sample smaller than min_tail");
    if (!(x.front() > 0.0)) throw std::invalid_argument("fit_powerlaw: samples must be positive");

    // suffix log-sums make the per-candidate MLE O(1)
    std::vector<double> suffix_ln(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix_ln[i] = suffix_ln[i + 1] + std::log(x[i]);

    // candidate cutoffs: first occurrence of each distinct value that leaves
    // a big enough tail
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i + opts.min_tail <= n; ++i)
        if (i == 0 || x[i] != x[i - 1]) cand.push_back(i);
    if (cand.empty()) throw std::invalid_argument("fit_powerlaw: no admissible cutoff");

    if (opts.max_candidates > 0 && cand.size() > opts.max_candidates) {
        std::vector<std::size_t> thin;
        thin.reserve(opts.max_candidates);
        const std::size_t c = cand.size(), m = opts.max_candidates;
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t idx = k * (c - 1) / (m - 1);
            if (thin.empty() || cand[idx] != thin.back()) thin.push_back(cand[idx]);
        }
        cand = std::move(thin);
    }

    struct Best {
        double ks = std::numeric_limits<double>::infinity();
        double xmin = std::numeric_limits<double>::infinity();
        double alpha = 0.0;
        std::size_t n_tail = 0;

        void consider(double ks_, double xmin_, double alpha_, std::size_t nt) {
            if (ks_ < ks || (ks_ == ks && xmin_ < xmin)) {
                ks = ks_;
                xmin = xmin_;
                alpha = alpha_;
                n_tail = nt;
            }
        }
        void merge(const Best& o) { consider(o.ks, o.xmin, o.alpha, o.n_tail); }
    };

    Best best;
    std::mutex mx;
    parallel_for(cand.size(), opts.n_threads, [&](std::size_t lo, std::size_t hi) {
        Best local;
        for (std::size_t k = lo; k < hi; ++k) {
            const std::size_t i = cand[k];
            const std::size_t n_tail = n - i;
            const double xmin = x[i];
            const double sum_ln = suffix_ln[i] - static_cast<double>(n_tail) * std::log(xmin);
            if (!(sum_ln > 0.0)) continue; // all-equal tail
            const double alpha = 1.0 + static_cast<double>(n_tail) / sum_ln;
            local.consider(tail_ks(x.data() + i, n_tail, xmin, alpha), xmin, alpha, n_tail);
        }
        std::lock_guard<std::mutex> g(mx);
        best.merge(local);
    });

    if (!std::isfinite(best.ks))
        throw std::invalid_argument("fit_powerlaw: every admissible tail is degenerate");
    PowerLawFitResult r;
    r.alpha = best.alpha;
    r.xmin = best.xmin;
    r.ks_stat = best.ks;
    r.n_tail = best.n_tail;
    return r;
}

std::vector<CcdfPoint> ccdf(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("ccdf: empty sample");
    std::vector<double> x(samples);
    std::sort(x.begin(), x.end());
    std::vector<CcdfPoint> out;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (i == 0 || x[i] != x[i - 1])
            out.push_back({x[i], static_cast<double>(x.size() - i) / n});
    return out;
}

} // namespace burst
