#include "burstkit/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace burst {

namespace {

// Exponential integral E1(z) for 0 < z < 1 by its classical series; only the
// small-z branch is ever needed here (z >= 1 goes through the continued
// fraction with a = 0).
double expint_e1_small(double z) {
    constexpr double euler = 0.57721566490153286061;
    double sum = -euler - std::log(z);
    double term = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -z / k;
        double add = -term / k;
        sum += add;
        if (std::fabs(add) < std::fabs(sum) * 1e-17) break;
    }
    return sum;
}

// Modified Lentz continued fraction; accurate for z >= ~1 with any a <= 1.
double upper_gamma_cf(double a, double z) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = z + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-z + a * std::log(z)) * h;
}

// Lower-series for Gamma(a) - Gamma(a, z), valid for a > 0, z < ~1.
double lower_gamma_series(double a, double z) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= z / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return std::exp(-z + a * std::log(z)) * sum;
}

} // namespace

double upper_incomplete_gamma(double a, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("upper_incomplete_gamma: z must be > 0");
    if (a > 1.0) throw std::invalid_argument("upper_incomplete_gamma: a must be <= 1");
    if (a == 1.0) return std::exp(-z);
    if (z >= 1.0) return upper_gamma_cf(a, z);

    // z < 1: evaluate at a base shape in {0} ∪ [0.5, 1.5), then walk down to
    // a with Gamma(s-1, z) = (Gamma(s, z) - z^(s-1) e^-z) / (s - 1).  Walking
    // down is stable here because the z^(s-1) term dominates for z < 1.
    double fl = std::floor(a);
    double frac = a - fl;
    double scur, g;
    if (frac == 0.0) {
        scur = 0.0;
        g = expint_e1_small(z); // Gamma(0, z) = E1(z)
    } else {
        scur = frac < 0.5 ? frac + 1.0 : frac;
        g = std::tgamma(scur) - lower_gamma_series(scur, z);
    }
    if (scur > a) {
        double zp = std::exp((scur - 1.0) * std::log(z) - z);
        while (scur > a + 0.5) {
            double s1 = scur - 1.0;
            g = (g - zp) / s1;
            zp /= z;
            scur = s1;
        }
    }
    return g;
}

double pareto_cutoff_log_norm(double alpha, double lambda, double xmin) {
    if (!(lambda > 0.0) || !(xmin > 0.0))
        throw std::invalid_argument("pareto_cutoff_log_norm: lambda and xmin must be > 0");
    return (1.0 - alpha) * std::log(lambda) +
           std::log(upper_incomplete_gamma(1.0 - alpha, xmin / lambda));
}

double pareto_cutoff_cdf(double t, double alpha, double lambda, double xmin) {
    if (t <= xmin) return 0.0;
    double tail = upper_incomplete_gamma(1.0 - alpha, t / lambda) /
                  upper_incomplete_gamma(1.0 - alpha, xmin / lambda);
    if (tail < 0.0) tail = 0.0;
    if (tail > 1.0) tail = 1.0;
    return 1.0 - tail;
}

} // namespace burst
