#include "stopwise/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "stopwise/normal.hpp"
#include "stopwise/rng.hpp"
#include "stopwise/summation.hpp"
#include "stopwise/value_curve.hpp"

namespace stopwise {

namespace {

// Draws one arrival sequence into q. Iid families invert their CDF on a
// uniform; the finite families deal a partial shuffle of the pool.
class Sampler {
 public:
  Sampler(const QualityModel& model, long n) : model_(model), n_(n) {
    switch (model.kind()) {
      case ModelKind::ClassicalIndicator:
      case ModelKind::Permutation:
        pool_size_ = model.intrinsic_n();
        break;
      case ModelKind::FiniteMultiset:
        pool_size_ = model.intrinsic_n();
        break;
      default:
        pool_size_ = 0;
        break;
    }
    if (pool_size_ > 0 && n > pool_size_) {
      throw std::invalid_argument("simulate: n exceeds the pool size");
    }
  }

  void fill(RngStream& rng, std::vector<double>& q,
            std::vector<double>& scratch) const {
    switch (model_.kind()) {
      case ModelKind::Exponential:
        for (long i = 0; i < n_; ++i) q[i] = -std::log1p(-rng.next_unit());
        break;
      case ModelKind::Uniform:
        for (long i = 0; i < n_; ++i) q[i] = rng.next_unit();
        break;
      case ModelKind::Normal:
        for (long i = 0; i < n_; ++i) q[i] = normal_quantile(rng.next_unit());
        break;
      case ModelKind::Pareto: {
        double inv = -1.0 / model_.alpha();
        for (long i = 0; i < n_; ++i) {
          q[i] = std::pow(1.0 - rng.next_unit(), inv);
        }
        break;
      }
      case ModelKind::Bernoulli: {
        double p = model_.p();
        for (long i = 0; i < n_; ++i) {
          q[i] = rng.next_unit() <= p ? 0.0 : 1.0;
        }
        break;
      }
      case ModelKind::GenericCdf:
        for (long i = 0; i < n_; ++i) q[i] = model_.quantile(rng.next_unit());
        break;
      case ModelKind::ClassicalIndicator: {
        std::fill(q.begin(), q.begin() + n_, 0.0);
        uint64_t pos = rng.next_below(static_cast<uint64_t>(pool_size_));
        if (static_cast<long>(pos) < n_) q[pos] = 1.0;
        break;
      }
      case ModelKind::Permutation: {
        scratch.resize(static_cast<size_t>(pool_size_));
        for (long i = 0; i < pool_size_; ++i) {
          scratch[i] = static_cast<double>(i + 1);
        }
        partial_shuffle(rng, scratch, q);
        break;
      }
      case ModelKind::FiniteMultiset: {
        scratch.assign(model_.multiset_values().begin(),
                       model_.multiset_values().end());
        partial_shuffle(rng, scratch, q);
        break;
      }
    }
  }

 private:
  void partial_shuffle(RngStream& rng, std::vector<double>& pool,
                       std::vector<double>& q) const {
    const long m = static_cast<long>(pool.size());
    for (long i = 0; i < n_; ++i) {
      long j = i + static_cast<long>(
                       rng.next_below(static_cast<uint64_t>(m - i)));
      std::swap(pool[i], pool[j]);
      q[i] = pool[i];
    }
  }

  const QualityModel& model_;
  long n_;
  long pool_size_;
};

struct EpisodeOutcome {
  long hired;
  long best;
};

// One pass finds both the hired candidate (first record at or past c, last
// candidate as fallback) and the overall winner of the (quality, tie) order.
EpisodeOutcome scan_episode(std::span<const double> q,
                            std::span<const double> tie, long c) {
  const long n = static_cast<long>(q.size());
  long hired = c <= 1 ? 0 : -1;
  long best = 0;
  for (long i = 1; i < n; ++i) {
    bool record;
    if (q[i] > q[best]) {
      record = true;
    } else if (q[i] < q[best]) {
      record = false;
    } else {
      record = !tie.empty() && tie[i] > tie[best];
    }
    if (record) {
      if (hired < 0 && i + 1 >= c) hired = i;
      best = i;
    }
  }
  if (hired < 0) hired = n - 1;
  return {hired, best};
}

struct Partial {
  double sum = 0.0;
  double sumsq = 0.0;
  long best = 0;
  long count = 0;
};

template <typename Body>
void run_workers(int workers, Body&& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

SimReport simulate(const QualityModel& model, const SimConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("simulate: need n >= 1");
  if (cfg.c < 1 || cfg.c > cfg.n) {
    throw std::invalid_argument("simulate: c outside [1, n]");
  }
  if (cfg.trials < 1) throw std::invalid_argument("simulate: need trials >= 1");
  if (cfg.workers < 1) {
    throw std::invalid_argument("simulate: need workers >= 1");
  }
  Sampler sampler(model, cfg.n);
  const bool jitter = model.has_atoms();
  const int workers =
      static_cast<int>(std::min<long>(cfg.workers, cfg.trials));
  std::vector<Partial> parts(workers);

  run_workers(workers, [&](int w) {
    RngStream rng(cfg.seed, static_cast<uint64_t>(w));
    std::vector<double> q(cfg.n), tie(jitter ? cfg.n : 0), scratch;
    std::span<const double> tie_span(tie);
    KahanSum sum, sumsq;
    Partial part;
    for (long t = w; t < cfg.trials; t += workers) {
      sampler.fill(rng, q, scratch);
      for (long i = 0; i < static_cast<long>(tie.size()); ++i) {
        tie[i] = rng.next_unit();
      }
      auto out = scan_episode(q, tie_span, cfg.c);
      double v = q[out.hired];
      sum.add(v);
      sumsq.add(v * v);
      part.best += out.hired == out.best;
      ++part.count;
    }
    part.sum = sum.value();
    part.sumsq = sumsq.value();
    parts[w] = part;
  });

  double S = 0.0, Q = 0.0;
  long best = 0, total = 0;
  for (const auto& p : parts) {
    S += p.sum;
    Q += p.sumsq;
    best += p.best;
    total += p.count;
  }
  SimReport rep;
  rep.trials = total;
  rep.estimate = S / static_cast<double>(total);
  double var = 0.0;
  if (total > 1) {
    var = (Q - S * S / static_cast<double>(total)) /
          static_cast<double>(total - 1);
    var = std::fmax(var, 0.0);
  }
  rep.std_error = std::sqrt(var / static_cast<double>(total));
  rep.best_pick_rate = static_cast<double>(best) / static_cast<double>(total);
  return rep;
}

std::vector<double> exact_enumeration_curve(std::span<const double> values) {
  const long n = static_cast<long>(values.size());
  if (n < 1 || n > 10) {
    throw std::invalid_argument("exact enumeration is limited to n <= 10");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<KahanSum> acc(n);
  std::vector<char> rec(n);
  std::vector<long> next_rec(n);
  long perms = 0;
  do {
    ++perms;
    rec[0] = 1;
    long best = 0;
    for (long pos = 1; pos < n; ++pos) {
      int a = order[pos], b = order[best];
      bool record = values[a] > values[b] ||
                    (values[a] == values[b] && a > b);
      rec[pos] = record;
      if (record) best = pos;
    }
    long nr = n - 1;
    for (long pos = n - 1; pos >= 0; --pos) {
      if (rec[pos]) nr = pos;
      next_rec[pos] = nr;
    }
    for (long c = 1; c <= n; ++c) {
      acc[c - 1].add(values[order[next_rec[c - 1]]]);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<double> out(n);
  for (long c = 1; c <= n; ++c) {
    out[c - 1] = acc[c - 1].value() / static_cast<double>(perms);
  }
  return out;
}

double exact_enumeration(std::span<const double> values, long c) {
  const long n = static_cast<long>(values.size());
  if (c < 1 || c > n) {
    throw std::out_of_range("exact_enumeration: c outside [1, n]");
  }
  return exact_enumeration_curve(values)[c - 1];
}

SweepReport sweep_simulate(const QualityModel& model, long n, long trials,
                           uint64_t seed, int workers) {
  if (n < 1) throw std::invalid_argument("sweep: need n >= 1");
  if (trials < 1) throw std::invalid_argument("sweep: need trials >= 1");
  if (workers < 1) throw std::invalid_argument("sweep: need workers >= 1");
  Sampler sampler(model, n);
  const bool jitter = model.has_atoms();
  const int W = static_cast<int>(std::min<long>(workers, trials));
  std::vector<std::vector<double>> sums(W), sumsqs(W);
  std::vector<long> counts(W, 0);

  run_workers(W, [&](int w) {
    RngStream rng(seed, static_cast<uint64_t>(w));
    std::vector<double> q(n), tie(jitter ? n : 0), scratch;
    std::vector<char> rec(n);
    std::vector<long> next_rec(n);
    auto& sum = sums[w];
    auto& sumsq = sumsqs[w];
    sum.assign(n, 0.0);
    sumsq.assign(n, 0.0);
    for (long t = w; t < trials; t += W) {
      sampler.fill(rng, q, scratch);
      for (long i = 0; i < static_cast<long>(tie.size()); ++i) {
        tie[i] = rng.next_unit();
      }
      rec[0] = 1;
      long best = 0;
      for (long i = 1; i < n; ++i) {
        bool record;
        if (q[i] > q[best]) {
          record = true;
        } else if (q[i] < q[best]) {
          record = false;
        } else {
          record = jitter && tie[i] > tie[best];
        }
        rec[i] = record;
        if (record) best = i;
      }
      long nr = n - 1;
      for (long i = n - 1; i >= 0; --i) {
        if (rec[i]) nr = i;
        next_rec[i] = nr;
      }
      for (long c = 1; c <= n; ++c) {
        double v = q[next_rec[c - 1]];
        sum[c - 1] += v;
        sumsq[c - 1] += v * v;
      }
      ++counts[w];
    }
  });

  SweepReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.workers = W;
  rep.per_c.resize(n);
  for (long c = 1; c <= n; ++c) {
    double S = 0.0, Q = 0.0;
    for (int w = 0; w < W; ++w) {
      S += sums[w][c - 1];
      Q += sumsqs[w][c - 1];
    }
    auto& pt = rep.per_c[c - 1];
    pt.c = c;
    pt.estimate = S / static_cast<double>(trials);
    double var = 0.0;
    if (trials > 1) {
      var = (Q - S * S / static_cast<double>(trials)) /
            static_cast<double>(trials - 1);
      var = std::fmax(var, 0.0);
    }
    pt.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  long best_c = 1;
  for (long c = 2; c <= n; ++c) {
    if (rep.per_c[c - 1].estimate > rep.per_c[best_c - 1].estimate) {
      best_c = c;
    }
  }
  rep.argmax_c = best_c;
  return rep;
}

ArgmaxReport empirical_argmax_from(const SweepReport& sweep,
                                   const QualityModel& model) {
  std::vector<double> mu_seq = model.mu_sequence(sweep.n);
  ThresholdResult analytic = optimal_threshold(mu_seq, sweep.n);
  ArgmaxReport rep;
  rep.c_hat = sweep.argmax_c;
  rep.estimate = sweep.per_c[sweep.argmax_c - 1].estimate;
  rep.std_error = sweep.per_c[sweep.argmax_c - 1].std_error;
  rep.analytic_c_star = analytic.c_star;
  rep.analytic_v_star = analytic.v_star;
  rep.separated =
      std::fabs(rep.estimate - rep.analytic_v_star) > 2.0 * rep.std_error;
  return rep;
}

ArgmaxReport empirical_argmax(const QualityModel& model, long n, long trials,
                              uint64_t seed, int workers) {
  return empirical_argmax_from(sweep_simulate(model, n, trials, seed, workers),
                               model);
}

}  // namespace stopwise
