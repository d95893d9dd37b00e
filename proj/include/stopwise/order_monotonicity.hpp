#pragma once

#include <span>
#include <vector>

#include "stopwise/quality_model.hpp"
#include "stopwise/rational.hpp"

namespace stopwise {

// Triangle of forward differences of a mu sequence. rows[j][k-1] holds
// Delta^j mu_k for k + j <= n, j = 0..j_max.
struct DerivativeTable {
  int j_max = 0;
  std::vector<std::vector<double>> rows;
  double at(int j, long k) const { return rows[j][k - 1]; }
};

DerivativeTable build_derivative_table(std::span<const double> mu_seq,
                                       int j_max);

// Delta^j mu_k via the difference recurrence. For j > 2 the binomial
// expansion sum_i C(j,i) (-1)^{j-i} mu_{k+i} is evaluated as well and a
// disagreement beyond 1e-6 relative is reported on stderr; the recurrence
// value is returned either way.
double discrete_derivative(std::span<const double> mu_seq, int j, long k);

struct SignViolation {
  int j;
  long k;
  double value;
};

// Checks the alternation Delta^j mu_k >= 0 for odd j and <= 0 for even j >= 2
// across the whole triangle, with a tolerance of 1e-9 times the magnitude of
// the sequence. Returns the violations, empty when the pattern holds.
std::vector<SignViolation> sign_alternation_check(
    std::span<const double> mu_seq, int j_max = 12);

// Residual of the closed form
//   Delta^j mu_k = C(k+j, j)^{-1} (-1)^{j+1} (mu_{k+1:k+j} - mu_{k:k+j})
// against the recurrence, evaluated on the exchangeable pool behind `table`.
double prop3_identity_residual(const OrderStatTable& table, int j, long k);

// Same residual on exact rationals for an integer-valued pool. A correct
// implementation returns exactly zero.
Rational prop3_identity_residual_exact(std::span<const long long> values,
                                       int j, long k);

}  // namespace stopwise
