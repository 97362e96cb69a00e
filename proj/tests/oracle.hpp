#pragma once

// Independent numerical oracles for the statistical code under test.  These
// deliberately re-derive quantities from definitions (quadrature on the
// density, brute-force recounts) instead of calling the library's own
// routines.

#include "burstkit/rng.hpp"
#include "burstkit/trace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// adaptive Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// ln integral_xmin^inf t^-alpha e^(-t/lambda) dt via exp-shifted quadrature
// on y = ln t; independent of the library's incomplete-gamma route.
inline double log_norm_quad(double alpha, double lambda, double xmin) {
    const double y0 = std::log(xmin);
    auto g = [&](double y) { return (1.0 - alpha) * y - std::exp(y) / lambda; };
    // the integrand in y is exp(g(y)); g is concave with peak where
    // (1-alpha) = e^y / lambda
    double ypeak = y0;
    if (alpha < 1.0) ypeak = std::max(y0, std::log((1.0 - alpha) * lambda));
    const double gmax = g(ypeak);
    double yend = ypeak + 1.0;
    while (g(yend) > gmax - 746.0) yend += std::max(1.0, 0.25 * (yend - y0));
    auto f = [&](double y) { return std::exp(g(y) - gmax); };
    // split at the peak so the adaptive pass sees both flanks
    double total = 0.0;
    if (ypeak > y0) total += integrate(f, y0, ypeak);
    total += integrate(f, ypeak, yend);
    return gmax + std::log(total);
}

// CDF of t^-alpha e^(-t/lambda) / Z on [xmin, inf), by quadrature
inline double cdf_quad(double t, double alpha, double lambda, double xmin) {
    if (t <= xmin) return 0.0;
    const double lz = log_norm_quad(alpha, lambda, xmin);
    auto f = [&](double y) { return std::exp((1.0 - alpha) * y - std::exp(y) / lambda - lz); };
    return integrate(f, std::log(xmin), std::log(t));
}

// random weekly series with a random join offset; counts in [0, max_count]
inline burst::NodeSeries random_series(burst::SplitMix64& rng, int max_life = 40,
                                       std::uint32_t max_count = 12) {
    burst::NodeSeries s;
    s.node = static_cast<burst::NodeId>(rng.next() & 0xffff);
    s.join_week = static_cast<int>(rng.next() % 20);
    int life = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_life));
    s.weekly.resize(static_cast<std::size_t>(life));
    for (auto& c : s.weekly) c = static_cast<std::uint32_t>(rng.next() % (max_count + 1));
    s.weekly[0] = std::max<std::uint32_t>(1, s.weekly[0]); // join week has an event
    return s;
}

// two-sided K-S distance between a sorted sample and a cdf
inline double ks_against(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
    double d = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = cdf(sorted[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

} // namespace oracle
