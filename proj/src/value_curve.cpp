#include "stopwise/value_curve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stopwise/summation.hpp"

namespace stopwise {

namespace {

void check_args(std::span<const double> mu_seq, long n, long need) {
  if (n < 1) throw std::invalid_argument("horizon n must be >= 1");
  if (static_cast<long>(mu_seq.size()) < need) {
    throw std::invalid_argument("mu sequence is shorter than the horizon");
  }
}

// suffix[c] = sum_{k=c}^{n-1} (mu_{k+1} - mu_k)/k for c in [1, n-1], and the
// same sum over |mu_{k+1} - mu_k| to bound the rounding error of suffix[c].
struct SuffixSums {
  std::vector<double> value;
  std::vector<double> magnitude;
};

SuffixSums diff_suffix_sums(std::span<const double> mu_seq, long n) {
  SuffixSums s;
  s.value.assign(static_cast<size_t>(n) + 1, 0.0);
  s.magnitude.assign(static_cast<size_t>(n) + 1, 0.0);
  KahanSum acc;
  KahanSum mag;
  for (long k = n - 1; k >= 1; --k) {
    double term = (mu_seq[k] - mu_seq[k - 1]) / static_cast<double>(k);
    acc.add(term);
    mag.add(std::fabs(term));
    s.value[k] = acc.value();
    s.magnitude[k] = mag.value();
  }
  return s;
}

// A computed difference within this radius of zero cannot be told apart
// from an exact tie: families like the rank pools hit Delta V = 0 exactly
// at some horizons, and stepping past the smaller maximizer there would
// break the smallest-maximizer convention.
double tie_radius(const SuffixSums& s, double tail_term, long c) {
  constexpr double kRoundoff = 16.0 * std::numeric_limits<double>::epsilon();
  return kRoundoff * (s.magnitude[c] + std::fabs(tail_term));
}

}  // namespace

double value_at(std::span<const double> mu_seq, double mu, long n, long c) {
  if (c < 1 || c > n) throw std::out_of_range("value_at: c outside [1, n]");
  check_args(mu_seq, n, n - 1);
  if (c == 1 || n == 1) return mu;
  KahanSum s;
  double cm1 = static_cast<double>(c - 1);
  for (long k = n - 1; k >= c; --k) {
    s.add(mu_seq[k - 1] * cm1 /
          (static_cast<double>(k - 1) * static_cast<double>(k)));
  }
  s.add(mu * cm1 / static_cast<double>(n - 1));
  return s.value();
}

double forward_diff(std::span<const double> mu_seq, long n, long c) {
  if (c < 1 || c > n - 1) {
    throw std::out_of_range("forward_diff: c outside [1, n-1]");
  }
  check_args(mu_seq, n, n);
  KahanSum s;
  for (long k = n - 1; k >= c; --k) {
    s.add((mu_seq[k] - mu_seq[k - 1]) / static_cast<double>(k));
  }
  return s.value() - (mu_seq[n - 1] - mu_seq[0]) / static_cast<double>(n - 1);
}

double second_diff(std::span<const double> mu_seq, long c) {
  if (c < 1 || c + 1 > static_cast<long>(mu_seq.size())) {
    throw std::out_of_range("second_diff: need mu_{c+1} in the sequence");
  }
  return -(mu_seq[c] - mu_seq[c - 1]) / static_cast<double>(c);
}

ThresholdResult optimal_threshold(std::span<const double> mu_seq, long n,
                                  double tol) {
  check_args(mu_seq, n, n);
  ThresholdResult r;
  r.n = n;
  if (n == 1) {
    r.c_star = 1;
    r.v_star = mu_seq[0];
    r.harmonic_tail = std::numeric_limits<double>::infinity();
    r.satisfies_theorem_bound = true;
    return r;
  }
  auto suffix = diff_suffix_sums(mu_seq, n);
  double tail_term = (mu_seq[n - 1] - mu_seq[0]) / static_cast<double>(n - 1);
  r.c_star = n;
  r.degenerate = true;
  for (long c = 1; c <= n - 1; ++c) {
    if (suffix.value[c] - tail_term <= tol + tie_radius(suffix, tail_term, c)) {
      r.c_star = c;
      r.degenerate = false;
      break;
    }
  }
  r.v_star = value_at(mu_seq, mu_seq[0], n, r.c_star);
  if (r.c_star == 1) {
    r.harmonic_tail = std::numeric_limits<double>::infinity();
    r.satisfies_theorem_bound = true;
  } else {
    r.harmonic_tail = harmonic_range(r.c_star - 1, n - 1);
    r.satisfies_theorem_bound = r.harmonic_tail > 1.0;
  }
  return r;
}

ValueCurve full_curve(std::span<const double> mu_seq, double mu, long n,
                      std::string model_label) {
  check_args(mu_seq, n, n);
  ValueCurve curve;
  curve.n = n;
  curve.model_label = std::move(model_label);
  curve.values.resize(static_cast<size_t>(n));
  curve.values[0] = mu;
  if (n == 1) return curve;
  auto suffix = diff_suffix_sums(mu_seq, n);
  double tail_term = (mu_seq[n - 1] - mu_seq[0]) / static_cast<double>(n - 1);
  curve.diffs.resize(static_cast<size_t>(n) - 1);
  KahanSum v;
  v.add(mu);
  for (long c = 1; c <= n - 1; ++c) {
    double d = suffix.value[c] - tail_term;
    if (std::fabs(d) <= tie_radius(suffix, tail_term, c)) d = 0.0;
    curve.diffs[c - 1] = d;
    v.add(d);
    curve.values[c] = v.value();
  }
  return curve;
}

long argmax_first(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax_first: empty curve");
  long best = 1;
  for (long c = 2; c <= static_cast<long>(values.size()); ++c) {
    if (values[c - 1] > values[best - 1]) best = c;
  }
  return best;
}

}  // namespace stopwise
