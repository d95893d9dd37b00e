#pragma once

#include <span>
#include <string>
#include <vector>

namespace stopwise {

// Payoff curve of the threshold rules on a horizon of n candidates.
// values[c-1] = V_n(c), diffs[c-1] = V_n(c+1) - V_n(c) for c < n.
struct ValueCurve {
  long n = 0;
  std::string model_label;
  std::vector<double> values;
  std::vector<double> diffs;
};

struct ThresholdResult {
  long n = 0;
  long c_star = 0;
  double v_star = 0.0;
  // sum_{k=c*-1}^{n-1} 1/k; +inf when c* == 1 (the bound is vacuous there).
  double harmonic_tail = 0.0;
  bool satisfies_theorem_bound = false;
  // True when no forward difference ever crossed zero and the scan fell
  // through to c = n. Cannot happen in exact arithmetic.
  bool degenerate = false;
};

// V_n(c) for one threshold. mu_seq must hold mu_1..mu_{n-1} (mu_n unused
// here); mu is the single-draw mean. c = 1 returns mu exactly.
double value_at(std::span<const double> mu_seq, double mu, long n, long c);

// V_n(c+1) - V_n(c) through the telescoped form
//   sum_{k=c}^{n-1} (mu_{k+1} - mu_k)/k - (mu_n - mu_1)/(n-1),
// which is far better conditioned than subtracting two curve values.
double forward_diff(std::span<const double> mu_seq, long n, long c);

// V_n(c+2) - 2 V_n(c+1) + V_n(c) = -(mu_{c+1} - mu_c)/c.
double second_diff(std::span<const double> mu_seq, long c);

// Smallest maximizer of V_n, found as the first c with a non-positive
// forward difference; concavity of the curve makes the scan exact. tol
// widens the acceptance to diff <= tol for noisy mu sequences.
ThresholdResult optimal_threshold(std::span<const double> mu_seq, long n,
                                  double tol = 0.0);

// Whole curve in O(n): suffix-sums of the increments give every forward
// difference, and the values are accumulated from V_n(1) = mu.
ValueCurve full_curve(std::span<const double> mu_seq, double mu, long n,
                      std::string model_label = "");

// Index (1-based) of the first maximum of a curve's values.
long argmax_first(std::span<const double> values);

}  // namespace stopwise
