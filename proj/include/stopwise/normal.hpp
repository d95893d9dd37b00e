#pragma once

namespace stopwise {

// Standard normal CDF, computed through erfc.
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Inverse of normal_cdf on (0, 1). A rational initial guess is polished with
// two Halley steps against the same normal_cdf used everywhere else, so the
// pair is consistent to machine precision. Throws std::domain_error outside
// the open unit interval.
double normal_quantile(double u);

}  // namespace stopwise
