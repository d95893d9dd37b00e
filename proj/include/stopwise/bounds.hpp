#pragma once

namespace stopwise {

// sum_{k=c_star-1}^{n-1} 1/k; +inf when c_star == 1.
double harmonic_tail_from(long c_star, long n);

// Necessary condition on the optimal threshold: the harmonic tail above must
// exceed 1. Vacuously true at c_star == 1.
bool harmonic_bound_holds(long c_star, long n);

// Optimal threshold of the indicator payoff: the least c >= 1 with
// sum_{k=c}^{n-1} 1/k <= 1. Evaluated by one descending accumulation.
long classical_threshold(long n);

struct Bracket {
  long lower = 0;
  long upper = 0;
};

// floor((n-1)/H_{n-1}) and ceil(n/H_n); the exponential optimum falls within
// one of this window. Needs n >= 3.
Bracket exponential_bracket(long n);

// (n-2) ln ln n / ln((n-1)^2 / (2 pi)) + 1, an upper bound on the standard
// normal optimum. Needs n >= 16 for the iterated log to be meaningful.
double normal_upper_bound(long n);

// alpha^(alpha/(alpha-1)), the limit of (n+1)/(c*+1) for Pareto(alpha).
// Tends to e as alpha -> 1+. Needs alpha > 1.
double pareto_ratio_bound(double alpha);

struct BernoulliBeta {
  double g_alpha = 0.0;  // (1 - e^-alpha)/alpha, continuously 1 at alpha = 0
  double beta = 0.0;     // root of int_beta^1 e^(-alpha z)/z dz = g(alpha)
};

// Linear growth rate of the Bernoulli optimum when 1-p scales like alpha/n.
// beta(0) = 1/e recovers the classical rate. alpha >= 0.
BernoulliBeta bernoulli_beta(double alpha);

// Smallest maximizer for the uniform permutation model: the least c with
// c (c+1) >= n. Matches the curve argmax even at the tie points n = c(c+1),
// where rounding sqrt(n) instead would land one step to the right.
long permutation_threshold(long n);

}  // namespace stopwise
