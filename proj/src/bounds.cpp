#include "stopwise/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stopwise/quadrature.hpp"
#include "stopwise/summation.hpp"

namespace stopwise {

double harmonic_tail_from(long c_star, long n) {
  if (c_star < 1 || n < 1 || c_star > n) {
    throw std::out_of_range("harmonic_tail_from: need 1 <= c_star <= n");
  }
  if (c_star == 1) return std::numeric_limits<double>::infinity();
  return harmonic_range(c_star - 1, n - 1);
}

bool harmonic_bound_holds(long c_star, long n) {
  return harmonic_tail_from(c_star, n) > 1.0;
}

long classical_threshold(long n) {
  if (n < 2) throw std::invalid_argument("classical_threshold: need n >= 2");
  KahanSum s;
  for (long k = n - 1; k >= 1; --k) {
    s.add(1.0 / static_cast<double>(k));
    if (s.value() > 1.0) return k + 1;
  }
  return 1;
}

Bracket exponential_bracket(long n) {
  if (n < 3) throw std::invalid_argument("exponential_bracket: need n >= 3");
  double hn1 = harmonic_number(n - 1);
  double hn = harmonic_number(n);
  Bracket b;
  b.lower = static_cast<long>(std::floor(static_cast<double>(n - 1) / hn1));
  b.upper = static_cast<long>(std::ceil(static_cast<double>(n) / hn));
  return b;
}

double normal_upper_bound(long n) {
  if (n < 16) throw std::invalid_argument("normal_upper_bound: need n >= 16");
  double nn = static_cast<double>(n);
  return (nn - 2.0) * std::log(std::log(nn)) /
             std::log((nn - 1.0) * (nn - 1.0) / (2.0 * M_PI)) +
         1.0;
}

double pareto_ratio_bound(double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("pareto_ratio_bound: need alpha > 1");
  }
  return std::exp(alpha * std::log1p(alpha - 1.0) / (alpha - 1.0));
}

BernoulliBeta bernoulli_beta(double alpha) {
  if (alpha < 0.0) {
    throw std::invalid_argument("bernoulli_beta: need alpha >= 0");
  }
  BernoulliBeta out;
  out.g_alpha = alpha == 0.0 ? 1.0 : -std::expm1(-alpha) / alpha;
  auto integrand = [alpha](double z) { return std::exp(-alpha * z) / z; };
  QuadOptions opt;
  opt.abs_tol = 1e-12;
  auto tail = [&](double beta) { return integrate(integrand, beta, 1.0, opt); };
  double lo = 1e-12, hi = 1.0 - 1e-12;
  if (tail(lo) < out.g_alpha) {
    throw std::runtime_error("bernoulli_beta: no root above 1e-12");
  }
  // tail is strictly decreasing in beta with tail(1) = 0 < g(alpha).
  while (hi - lo > 1e-11) {
    double mid = 0.5 * (lo + hi);
    if (tail(mid) >= out.g_alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.beta = 0.5 * (lo + hi);
  return out;
}

long permutation_threshold(long n) {
  if (n < 1) throw std::invalid_argument("permutation_threshold: need n >= 1");
  long c = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (c > 1 && (c - 1) * c >= n) --c;
  while (c * (c + 1) < n) ++c;
  return c;
}

}  // namespace stopwise
