#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace stopwise {

enum class ModelKind {
  Exponential,
  Uniform,
  Normal,
  Pareto,
  Bernoulli,
  ClassicalIndicator,
  Permutation,
  FiniteMultiset,
  GenericCdf,
};

// Monotone CDF evaluator plus support bounds (either may be infinite).
// `has_atoms` tells the simulator whether tie handling is needed.
struct CdfSpec {
  std::function<double(double)> cdf;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool has_atoms = true;
};

// Sorted population of a finite exchangeable pool. means[l-1] is the l-th
// smallest value, i.e. the mean of the l-th order statistic when all m items
// are drawn.
struct OrderStatTable {
  long m = 0;
  std::vector<double> means;
};

OrderStatTable order_stat_means(std::span<const double> values);

// E[max of i draws without replacement] from the pool behind `table`.
// Evaluated with the ratio recurrence for the hypergeometric weights
// C(l-1, i-1)/C(m, i), which never forms large factorials.
double exchangeable_mu_of_max(const OrderStatTable& table, long i);

// E[l-th smallest among r draws without replacement], 1 <= l <= r <= m.
double order_stat_mean_of_draws(const OrderStatTable& table, long l, long r);

// A quality model is anything that yields the running-maximum means
// mu_k = E[max of the first k candidates]. Iid families get closed forms or
// quadrature; the finite families (classical indicator, uniform permutation,
// explicit multisets) are exchangeable pools drawn without replacement.
class QualityModel {
 public:
  static QualityModel exponential();
  static QualityModel uniform();
  static QualityModel normal();
  static QualityModel pareto(double alpha);
  static QualityModel bernoulli(double p);
  static QualityModel classical_indicator(long n);
  static QualityModel permutation(long n);
  static QualityModel finite_multiset(std::vector<double> values);
  static QualityModel generic_cdf(CdfSpec spec, std::string label = "cdf");
  static QualityModel cdf_table(std::vector<double> xs, std::vector<double> Fs,
                                std::string label = "cdf");

  ModelKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool iid() const;
  bool has_atoms() const;
  // Pool size for the finite families, 0 for unbounded ones.
  long intrinsic_n() const { return intrinsic_n_; }
  double alpha() const { return alpha_; }
  double p() const { return p_; }
  const std::vector<double>& multiset_values() const { return values_; }
  const OrderStatTable& order_table() const { return table_; }

  // E[single draw]. Equals mu_max(1).
  double mu() const;
  // mu_k for k >= 1 (k bounded by the pool size for finite families).
  double mu_max(long k) const;
  // mu_{k+1} - mu_k. For iid models this is the tail-weight integral
  // int F^k (1-F); finite multisets take the exact difference. Not defined
  // for the classical indicator or permutation families.
  double mu_increment(long k) const;
  // (mu_1, ..., mu_n), sharing work across prefixes.
  std::vector<double> mu_sequence(long n) const;
  // Inverse CDF on (0,1); iid models only.
  double quantile(double u) const;

  double quad_tol() const { return quad_tol_; }
  void set_quad_tol(double tol) { quad_tol_ = tol; }

 private:
  QualityModel() = default;

  ModelKind kind_ = ModelKind::Exponential;
  std::string label_;
  double alpha_ = 0.0;
  double p_ = 0.0;
  long intrinsic_n_ = 0;
  std::vector<double> values_;
  OrderStatTable table_;
  CdfSpec cdf_;
  double quad_tol_ = 1e-10;
};

// Parses the model grammar used by the CLI and the file formats behind it:
//   exponential | uniform | normal
//   pareto:alpha=A        (A > 1)
//   bernoulli:p=P         (0 < P < 1)
//   classical:n=N | permutation:n=N
//   multiset:file=PATH    (one value per line)
//   cdf:table=PATH        (CSV rows x,F; piecewise-linear interpolation)
QualityModel parse_model_spec(const std::string& spec);

}  // namespace stopwise
