#pragma once

namespace burst {

// Upper incomplete gamma Gamma(a, z) = integral_z^inf t^(a-1) e^-t dt for
// z > 0 and a <= 1, including negative and integer a (the region needed by
// the cutoff-Pareto normalization; standard libraries stop at a > 0).
// Shapes above 1 are rejected.
double upper_incomplete_gamma(double a, double z);

// ln integral_xmin^inf t^-alpha e^(-t/lambda) dt
//   = (1 - alpha) ln lambda + ln Gamma(1 - alpha, xmin / lambda)
double pareto_cutoff_log_norm(double alpha, double lambda, double xmin);

// CDF at t (>= xmin) of the density t^-alpha e^(-t/lambda) / Z on [xmin, inf)
double pareto_cutoff_cdf(double t, double alpha, double lambda, double xmin);

} // namespace burst
