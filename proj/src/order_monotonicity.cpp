#include "stopwise/order_monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "stopwise/combinatorics.hpp"

namespace stopwise {

namespace {

double diff_recurrence(std::span<const double> mu_seq, int j, long k) {
  std::vector<double> buf(static_cast<size_t>(j) + 1);
  for (int i = 0; i <= j; ++i) buf[i] = mu_seq[k - 1 + i];
  for (int round = 0; round < j; ++round) {
    for (int i = 0; i + round < j; ++i) buf[i] = buf[i + 1] - buf[i];
  }
  return buf[0];
}

double diff_expansion(std::span<const double> mu_seq, int j, long k,
                      double* magnitude = nullptr) {
  double s = 0.0;
  double m = 0.0;
  for (int i = 0; i <= j; ++i) {
    double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
    double term = binomial_double(j, i) * mu_seq[k - 1 + i];
    s += sign * term;
    m += std::fabs(term);
  }
  if (magnitude != nullptr) *magnitude = m;
  return s;
}

Rational binomial_rational(long n, long k) {
  unsigned __int128 b = binomial_u128(n, k);
  if (b > static_cast<unsigned __int128>(INT64_MAX)) {
    throw std::overflow_error("binomial too large for the rational path");
  }
  return Rational(static_cast<long long>(b));
}

Rational mu_of_max_exact(std::span<const long long> sorted, long i) {
  const long m = static_cast<long>(sorted.size());
  Rational total(0);
  Rational denom = binomial_rational(m, i);
  for (long l = i; l <= m; ++l) {
    total = total + binomial_rational(l - 1, i - 1) * Rational(sorted[l - 1]);
  }
  return total / denom;
}

Rational order_stat_mean_exact(std::span<const long long> sorted, long l,
                               long r) {
  const long m = static_cast<long>(sorted.size());
  Rational total(0);
  Rational denom = binomial_rational(m, r);
  for (long s = l; s <= m - r + l; ++s) {
    total = total + binomial_rational(s - 1, l - 1) *
                        binomial_rational(m - s, r - l) *
                        Rational(sorted[s - 1]);
  }
  return total / denom;
}

}  // namespace

DerivativeTable build_derivative_table(std::span<const double> mu_seq,
                                       int j_max) {
  const long n = static_cast<long>(mu_seq.size());
  if (n < 1) throw std::invalid_argument("derivative table: empty sequence");
  DerivativeTable t;
  t.j_max = static_cast<int>(std::min<long>(j_max, n - 1));
  t.rows.resize(static_cast<size_t>(t.j_max) + 1);
  t.rows[0].assign(mu_seq.begin(), mu_seq.end());
  for (int j = 1; j <= t.j_max; ++j) {
    const auto& prev = t.rows[j - 1];
    auto& row = t.rows[j];
    row.resize(prev.size() - 1);
    for (size_t i = 0; i + 1 < prev.size(); ++i) {
      row[i] = prev[i + 1] - prev[i];
    }
  }
  return t;
}

double discrete_derivative(std::span<const double> mu_seq, int j, long k) {
  const long n = static_cast<long>(mu_seq.size());
  if (j < 0 || k < 1 || k + j > n) {
    throw std::out_of_range("discrete_derivative: need k >= 1, k + j <= n");
  }
  if (j == 0) return mu_seq[k - 1];
  double rec = diff_recurrence(mu_seq, j, k);
  if (j > 2) {
    double magnitude = 0.0;
    double alt = diff_expansion(mu_seq, j, k, &magnitude);
    // both routes carry cancellation noise around eps times the magnitude
    // of the expansion, so only a gap clear of that floor means anything
    double scale = std::fmax(std::fabs(rec), std::fabs(alt));
    double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (scale > 0.0 && std::fabs(rec - alt) > 1e-6 * scale + floor) {
      std::fprintf(stderr,
                   "discrete_derivative: routes disagree at j=%d k=%ld "
                   "(recurrence %.17g, expansion %.17g)\n",
                   j, k, rec, alt);
    }
  }
  return rec;
}

std::vector<SignViolation> sign_alternation_check(
    std::span<const double> mu_seq, int j_max) {
  DerivativeTable t = build_derivative_table(mu_seq, j_max);
  double scale = 0.0;
  for (double v : mu_seq) scale = std::fmax(scale, std::fabs(v));
  double tol = 1e-9 * std::fmax(1.0, scale);
  std::vector<SignViolation> bad;
  for (int j = 1; j <= t.j_max; ++j) {
    const auto& row = t.rows[j];
    for (size_t i = 0; i < row.size(); ++i) {
      double v = row[i];
      bool odd = (j % 2) == 1;
      if ((odd && v < -tol) || (!odd && v > tol)) {
        bad.push_back({j, static_cast<long>(i) + 1, v});
      }
    }
  }
  return bad;
}

double prop3_identity_residual(const OrderStatTable& table, int j, long k) {
  if (j < 1 || k < 1 || k + j > table.m) {
    throw std::out_of_range("prop3 residual: need j >= 1, k + j <= m");
  }
  std::vector<double> mu(static_cast<size_t>(j) + 1);
  for (int i = 0; i <= j; ++i) {
    mu[i] = exchangeable_mu_of_max(table, k + i);
  }
  double lhs = diff_recurrence(mu, j, 1);
  double sign = (j % 2 == 0) ? -1.0 : 1.0;
  double rhs = sign *
               (order_stat_mean_of_draws(table, k + 1, k + j) -
                order_stat_mean_of_draws(table, k, k + j)) /
               binomial_double(k + j, j);
  return lhs - rhs;
}

Rational prop3_identity_residual_exact(std::span<const long long> values,
                                       int j, long k) {
  const long m = static_cast<long>(values.size());
  if (j < 1 || k < 1 || k + j > m) {
    throw std::out_of_range("prop3 residual: need j >= 1, k + j <= m");
  }
  std::vector<long long> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Rational> mu(static_cast<size_t>(j) + 1);
  for (int i = 0; i <= j; ++i) {
    mu[i] = mu_of_max_exact(sorted, k + i);
  }
  for (int round = 0; round < j; ++round) {
    for (int i = 0; i + round < j; ++i) mu[i] = mu[i + 1] - mu[i];
  }
  Rational lhs = mu[0];
  Rational delta = order_stat_mean_exact(sorted, k + 1, k + j) -
                   order_stat_mean_exact(sorted, k, k + j);
  Rational rhs = delta / binomial_rational(k + j, j);
  if (j % 2 == 0) rhs = -rhs;
  return lhs - rhs;
}

}  // namespace stopwise
