#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stopwise/quality_model.hpp"

namespace stopwise {

struct SimConfig {
  long n = 0;
  long c = 1;
  long trials = 0;
  uint64_t seed = 0;
  int workers = 1;
};

struct SimReport {
  double estimate = 0.0;       // mean payoff of the hired candidate
  double std_error = 0.0;
  double best_pick_rate = 0.0; // fraction of runs that hired the overall best
  long trials = 0;
};

// Monte Carlo estimate of V_n(c): play the threshold rule on sampled arrival
// sequences. Trial t is drawn from stream (t mod workers) of the seed, and
// the per-stream partials are reduced in stream order, so the report is
// bit-identical for a fixed (seed, workers) regardless of scheduling.
// Models with atoms get an auxiliary uniform draw per candidate that breaks
// ties uniformly at random, matching the exchangeable-rank dynamics.
SimReport simulate(const QualityModel& model, const SimConfig& cfg);

// Expected payoff of threshold c when the pool `values` arrives in a
// uniformly random order, averaged exactly over all n! permutations.
// Ties are broken by candidate label, which by symmetry is equivalent to
// uniform tie-breaking. Guarded to n <= 10.
double exact_enumeration(std::span<const double> values, long c);

// The whole exact curve in one sweep over the permutations.
std::vector<double> exact_enumeration_curve(std::span<const double> values);

struct SweepPoint {
  long c = 0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct SweepReport {
  long n = 0;
  long trials = 0;
  uint64_t seed = 0;
  int workers = 1;
  std::vector<SweepPoint> per_c;
  long argmax_c = 0;  // first empirical maximizer
};

// One pass over the trials feeds every threshold at once: each episode is
// scanned for its record positions, and threshold c hires the first record
// at or past c (the last candidate when none exists).
SweepReport sweep_simulate(const QualityModel& model, long n, long trials,
                           uint64_t seed, int workers);

struct ArgmaxReport {
  long c_hat = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  long analytic_c_star = 0;
  double analytic_v_star = 0.0;
  // False when the empirical maximum is within 2 standard errors of the
  // analytic optimum's value, i.e. the data cannot tell the two apart.
  bool separated = false;
};

ArgmaxReport empirical_argmax(const QualityModel& model, long n, long trials,
                              uint64_t seed, int workers = 1);

// Same comparison on a sweep that has already been run.
ArgmaxReport empirical_argmax_from(const SweepReport& sweep,
                                   const QualityModel& model);

}  // namespace stopwise
