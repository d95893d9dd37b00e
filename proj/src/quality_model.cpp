#include "stopwise/quality_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "stopwise/combinatorics.hpp"
#include "stopwise/normal.hpp"
#include "stopwise/quadrature.hpp"
#include "stopwise/summation.hpp"

namespace stopwise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Leftmost x with F(x) >= u, by bracket expansion plus bisection. Plateaus
// resolve to their left endpoint, which is what inverse-CDF sampling wants.
double cdf_quantile(const CdfSpec& spec, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("cdf_quantile: argument outside (0,1)");
  }
  const auto& F = spec.cdf;
  double lo, hi;
  if (std::isfinite(spec.lower)) {
    lo = spec.lower;
    if (F(lo) >= u) return lo;
  } else {
    lo = std::isfinite(spec.upper) ? spec.upper - 1.0 : -1.0;
    double step = 1.0;
    int guard = 0;
    while (F(lo) >= u) {
      lo -= step;
      step *= 2.0;
      if (++guard > 400) {
        throw std::domain_error("cdf_quantile: lower bracket not found");
      }
    }
  }
  if (std::isfinite(spec.upper)) {
    hi = spec.upper;
  } else {
    hi = std::fmax(lo + 1.0, 1.0);
    double step = 1.0;
    int guard = 0;
    while (F(hi) < u) {
      hi += step;
      step *= 2.0;
      if (++guard > 400) {
        throw std::domain_error("cdf_quantile: upper bracket not found");
      }
    }
  }
  for (int i = 0; i < 200; ++i) {
    double width_floor = 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi));
    if (hi - lo <= width_floor) break;
    double mid = 0.5 * (lo + hi);
    if (F(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// int F^k (1-F) dx over the support. The core interval is located through
// quantiles so that the bump of the integrand (peaked where F = k/(k+1))
// cannot be missed, then doubling windows sweep whatever tail remains.
double increment_by_quadrature(const CdfSpec& spec, long k, double tol) {
  const auto& F = spec.cdf;
  auto g = [&F, k](double x) {
    double u = F(x);
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return std::pow(u, static_cast<double>(k)) * (1.0 - u);
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  // The bump sits at F = k/(k+1), so a quantile core pinched tighter than
  // 1/(k+1) from above always straddles it; integrating the whole support
  // instead lets the first Simpson split sample right past a narrow bump
  // and accept an answer of zero.
  double delta_hi = std::fmin(0.01, 1.0 / (8.0 * static_cast<double>(k + 1)));
  double core_lo = cdf_quantile(spec, 0.01);
  double core_hi = cdf_quantile(spec, 1.0 - delta_hi);
  if (core_hi < core_lo) core_hi = core_lo;
  QuadOptions core_opt = opt;
  core_opt.abs_tol = tol / 4.0;
  KahanSum total;
  total.add(integrate(g, core_lo, core_hi, core_opt));
  if (std::isfinite(spec.lower)) {
    if (spec.lower < core_lo) total.add(integrate(g, spec.lower, core_lo, opt));
  } else {
    total.add(integrate_half_line(g, core_lo, -1, opt));
  }
  if (std::isfinite(spec.upper)) {
    if (core_hi < spec.upper) total.add(integrate(g, core_hi, spec.upper, opt));
  } else {
    total.add(integrate_half_line(g, core_hi, +1, opt));
  }
  return total.value();
}

// E[X] = int_0^inf (1-F) - int_-inf^0 F, with the parts outside the support
// folded in analytically.
double mean_by_quadrature(const CdfSpec& spec, double tol) {
  const auto& F = spec.cdf;
  auto upper_integrand = [&F](double x) {
    double u = F(x);
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return 1.0 - u;
  };
  auto lower_integrand = [&F](double x) {
    double u = F(x);
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return u;
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  KahanSum e;
  if (spec.upper > 0.0) {
    double from = std::fmax(0.0, spec.lower);
    if (std::isfinite(spec.lower) && spec.lower > 0.0) e.add(spec.lower);
    if (std::isfinite(spec.upper)) {
      e.add(integrate(upper_integrand, from, spec.upper, opt));
    } else {
      e.add(integrate_half_line(upper_integrand, from, +1, opt));
    }
  } else if (std::isfinite(spec.upper)) {
    e.add(spec.upper);  // support entirely below zero: -int_U^0 1 dx
  }
  if (spec.lower < 0.0) {
    double from = std::fmin(0.0, spec.upper);
    if (std::isfinite(spec.lower)) {
      e.add(-integrate(lower_integrand, spec.lower, from, opt));
    } else {
      e.add(-integrate_half_line(lower_integrand, from, -1, opt));
    }
  }
  return e.value();
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_long(const std::string& s, long& out) {
  try {
    size_t pos = 0;
    out = std::stol(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<double> read_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open multiset file: " + path);
  }
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v;
    while (ls >> v) values.push_back(v);
  }
  if (values.empty()) {
    throw std::invalid_argument("multiset file has no values: " + path);
  }
  return values;
}

// Two-column CSV. A single non-numeric header row is tolerated.
std::pair<std::vector<double>, std::vector<double>> read_cdf_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open cdf table: " + path);
  }
  std::vector<double> xs, fs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, f;
    if (!(ls >> x >> f)) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("bad cdf table row: " + line);
    }
    first = false;
    xs.push_back(x);
    fs.push_back(f);
  }
  return {std::move(xs), std::move(fs)};
}

}  // namespace

OrderStatTable order_stat_means(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("order_stat_means: empty pool");
  }
  OrderStatTable t;
  t.m = static_cast<long>(values.size());
  t.means.assign(values.begin(), values.end());
  std::sort(t.means.begin(), t.means.end());
  return t;
}

double exchangeable_mu_of_max(const OrderStatTable& table, long i) {
  if (i < 1 || i > table.m) {
    throw std::out_of_range("exchangeable_mu_of_max: i outside [1, m]");
  }
  // P(max of i draws = l-th smallest) = C(l-1, i-1) / C(m, i); the weights
  // are generated by the ratio recurrence starting at l = m.
  const long m = table.m;
  KahanSum acc;
  double w = static_cast<double>(i) / static_cast<double>(m);
  for (long l = m; l >= i; --l) {
    acc.add(w * table.means[l - 1]);
    if (l > i) {
      w *= static_cast<double>(l - i) / static_cast<double>(l - 1);
    }
  }
  return acc.value();
}

double order_stat_mean_of_draws(const OrderStatTable& table, long l, long r) {
  const long m = table.m;
  if (l < 1 || r < l || r > m) {
    throw std::out_of_range("order_stat_mean_of_draws: need 1 <= l <= r <= m");
  }
  // P(l-th smallest of r draws = s-th smallest of pool)
  //   = C(s-1, l-1) C(m-s, r-l) / C(m, r), s in [l, m-r+l].
  double w;
  if (m <= 60) {
    w = static_cast<double>(binomial_u128(m - l, r - l)) /
        static_cast<double>(binomial_u128(m, r));
  } else {
    w = std::exp(std::lgamma(static_cast<double>(m - l + 1)) -
                 std::lgamma(static_cast<double>(r - l + 1)) -
                 std::lgamma(static_cast<double>(m + 1)) +
                 std::lgamma(static_cast<double>(r + 1)));
  }
  KahanSum acc;
  for (long s = l; s <= m - r + l; ++s) {
    acc.add(w * table.means[s - 1]);
    if (s < m - r + l) {
      w *= static_cast<double>(s) / static_cast<double>(s - l + 1);
      w *= static_cast<double>(m - s - r + l) / static_cast<double>(m - s);
    }
  }
  return acc.value();
}

QualityModel QualityModel::exponential() {
  QualityModel q;
  q.kind_ = ModelKind::Exponential;
  q.label_ = "exponential";
  return q;
}

QualityModel QualityModel::uniform() {
  QualityModel q;
  q.kind_ = ModelKind::Uniform;
  q.label_ = "uniform";
  return q;
}

QualityModel QualityModel::normal() {
  QualityModel q;
  q.kind_ = ModelKind::Normal;
  q.label_ = "normal";
  q.cdf_ = CdfSpec{[](double x) { return normal_cdf(x); }, -kInf, kInf, false};
  return q;
}

QualityModel QualityModel::pareto(double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("pareto: alpha must exceed 1");
  }
  QualityModel q;
  q.kind_ = ModelKind::Pareto;
  q.label_ = "pareto:alpha=" + format_param(alpha);
  q.alpha_ = alpha;
  q.cdf_ = CdfSpec{[alpha](double x) {
                     return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha);
                   },
                   1.0, kInf, false};
  return q;
}

QualityModel QualityModel::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("bernoulli: p must lie in (0,1)");
  }
  QualityModel q;
  q.kind_ = ModelKind::Bernoulli;
  q.label_ = "bernoulli:p=" + format_param(p);
  q.p_ = p;
  return q;
}

QualityModel QualityModel::classical_indicator(long n) {
  if (n < 1) throw std::invalid_argument("classical: n must be >= 1");
  QualityModel q;
  q.kind_ = ModelKind::ClassicalIndicator;
  q.label_ = "classical:n=" + std::to_string(n);
  q.intrinsic_n_ = n;
  return q;
}

QualityModel QualityModel::permutation(long n) {
  if (n < 1) throw std::invalid_argument("permutation: n must be >= 1");
  QualityModel q;
  q.kind_ = ModelKind::Permutation;
  q.label_ = "permutation:n=" + std::to_string(n);
  q.intrinsic_n_ = n;
  return q;
}

QualityModel QualityModel::finite_multiset(std::vector<double> values) {
  QualityModel q;
  q.kind_ = ModelKind::FiniteMultiset;
  q.table_ = order_stat_means(values);
  q.values_ = q.table_.means;
  q.intrinsic_n_ = q.table_.m;
  q.label_ = "multiset:m=" + std::to_string(q.table_.m);
  return q;
}

QualityModel QualityModel::generic_cdf(CdfSpec spec, std::string label) {
  if (!spec.cdf) throw std::invalid_argument("generic_cdf: missing evaluator");
  QualityModel q;
  q.kind_ = ModelKind::GenericCdf;
  q.cdf_ = std::move(spec);
  q.label_ = std::move(label);
  return q;
}

QualityModel QualityModel::cdf_table(std::vector<double> xs,
                                     std::vector<double> Fs,
                                     std::string label) {
  if (xs.size() != Fs.size()) {
    throw std::invalid_argument("cdf_table: mismatched columns");
  }
  std::vector<double> x = std::move(xs), f = std::move(Fs);
  if (x.size() < 2) {
    throw std::invalid_argument("cdf_table: need at least two rows");
  }
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i] < x[i + 1])) {
      throw std::invalid_argument("cdf_table: x values must increase");
    }
    if (f[i] > f[i + 1]) {
      throw std::invalid_argument("cdf_table: F values must not decrease");
    }
  }
  if (f.front() < 0.0 || std::fabs(f.back() - 1.0) > 1e-9) {
    throw std::invalid_argument("cdf_table: must end at F = 1");
  }
  auto xs_p = std::make_shared<std::vector<double>>(std::move(x));
  auto fs_p = std::make_shared<std::vector<double>>(std::move(f));
  CdfSpec spec;
  spec.lower = xs_p->front();
  spec.upper = xs_p->back();
  spec.has_atoms = fs_p->front() > 0.0;
  spec.cdf = [xs_p, fs_p](double v) {
    const auto& X = *xs_p;
    const auto& Fv = *fs_p;
    if (v <= X.front()) return Fv.front();
    if (v >= X.back()) return Fv.back();
    auto it = std::upper_bound(X.begin(), X.end(), v);
    size_t j = static_cast<size_t>(it - X.begin());
    double t = (v - X[j - 1]) / (X[j] - X[j - 1]);
    return Fv[j - 1] + t * (Fv[j] - Fv[j - 1]);
  };
  return generic_cdf(std::move(spec), std::move(label));
}

bool QualityModel::iid() const {
  switch (kind_) {
    case ModelKind::ClassicalIndicator:
    case ModelKind::Permutation:
    case ModelKind::FiniteMultiset:
      return false;
    default:
      return true;
  }
}

bool QualityModel::has_atoms() const {
  switch (kind_) {
    case ModelKind::Bernoulli:
    case ModelKind::ClassicalIndicator:
      return true;
    case ModelKind::FiniteMultiset:
      for (size_t i = 0; i + 1 < values_.size(); ++i) {
        if (values_[i] == values_[i + 1]) return true;
      }
      return false;
    case ModelKind::GenericCdf:
      return cdf_.has_atoms;
    default:
      return false;
  }
}

double QualityModel::mu() const {
  switch (kind_) {
    case ModelKind::Exponential:
      return 1.0;
    case ModelKind::Uniform:
      return 0.5;
    case ModelKind::Normal:
      return 0.0;
    case ModelKind::Pareto:
      return alpha_ / (alpha_ - 1.0);
    case ModelKind::Bernoulli:
      return 1.0 - p_;
    case ModelKind::ClassicalIndicator:
      return 1.0 / static_cast<double>(intrinsic_n_);
    case ModelKind::Permutation:
      return 0.5 * static_cast<double>(intrinsic_n_ + 1);
    case ModelKind::FiniteMultiset:
      return exchangeable_mu_of_max(table_, 1);
    case ModelKind::GenericCdf:
      return mean_by_quadrature(cdf_, quad_tol_);
  }
  return 0.0;
}

double QualityModel::mu_max(long k) const {
  if (k < 1) throw std::out_of_range("mu_max: k must be >= 1");
  if (intrinsic_n_ > 0 && k > intrinsic_n_) {
    throw std::out_of_range("mu_max: k exceeds the pool size");
  }
  switch (kind_) {
    case ModelKind::Exponential:
      return harmonic_number(k);
    case ModelKind::Uniform:
      return static_cast<double>(k) / static_cast<double>(k + 1);
    case ModelKind::Pareto: {
      double inv = 1.0 / alpha_;
      return std::exp(std::lgamma(1.0 - inv) +
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0 - inv));
    }
    case ModelKind::Bernoulli:
      return -std::expm1(static_cast<double>(k) * std::log(p_));
    case ModelKind::ClassicalIndicator:
      return static_cast<double>(k) / static_cast<double>(intrinsic_n_);
    case ModelKind::Permutation:
      return static_cast<double>(k) * static_cast<double>(intrinsic_n_ + 1) /
             static_cast<double>(k + 1);
    case ModelKind::FiniteMultiset:
      return exchangeable_mu_of_max(table_, k);
    case ModelKind::Normal:
    case ModelKind::GenericCdf: {
      KahanSum acc;
      acc.add(mu());
      for (long j = 1; j < k; ++j) {
        acc.add(increment_by_quadrature(cdf_, j, quad_tol_));
      }
      return acc.value();
    }
  }
  return 0.0;
}

double QualityModel::mu_increment(long k) const {
  if (k < 1) throw std::out_of_range("mu_increment: k must be >= 1");
  switch (kind_) {
    case ModelKind::ClassicalIndicator:
    case ModelKind::Permutation:
      throw std::invalid_argument(
          "mu_increment: not defined for rank-derived pools");
    case ModelKind::FiniteMultiset:
      if (k + 1 > intrinsic_n_) {
        throw std::out_of_range("mu_increment: k+1 exceeds the pool size");
      }
      return exchangeable_mu_of_max(table_, k + 1) -
             exchangeable_mu_of_max(table_, k);
    case ModelKind::Normal:
    case ModelKind::GenericCdf:
      return increment_by_quadrature(cdf_, k, quad_tol_);
    default:
      return mu_max(k + 1) - mu_max(k);
  }
}

std::vector<double> QualityModel::mu_sequence(long n) const {
  if (n < 1) throw std::invalid_argument("mu_sequence: n must be >= 1");
  if (intrinsic_n_ > 0 && n > intrinsic_n_) {
    throw std::out_of_range("mu_sequence: n exceeds the pool size");
  }
  std::vector<double> out(static_cast<size_t>(n));
  switch (kind_) {
    case ModelKind::Exponential: {
      KahanSum h;
      for (long k = 1; k <= n; ++k) {
        h.add(1.0 / static_cast<double>(k));
        out[k - 1] = h.value();
      }
      break;
    }
    case ModelKind::Normal:
    case ModelKind::GenericCdf: {
      KahanSum acc;
      acc.add(mu());
      out[0] = acc.value();
      for (long k = 2; k <= n; ++k) {
        acc.add(increment_by_quadrature(cdf_, k - 1, quad_tol_));
        out[k - 1] = acc.value();
      }
      break;
    }
    default:
      for (long k = 1; k <= n; ++k) out[k - 1] = mu_max(k);
      break;
  }
  return out;
}

double QualityModel::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: argument outside (0,1)");
  }
  switch (kind_) {
    case ModelKind::Exponential:
      return -std::log1p(-u);
    case ModelKind::Uniform:
      return u;
    case ModelKind::Normal:
      return normal_quantile(u);
    case ModelKind::Pareto:
      return std::pow(1.0 - u, -1.0 / alpha_);
    case ModelKind::Bernoulli:
      return u <= p_ ? 0.0 : 1.0;
    case ModelKind::GenericCdf:
      return cdf_quantile(cdf_, u);
    default:
      throw std::invalid_argument("quantile: model is not iid");
  }
}

QualityModel parse_model_spec(const std::string& spec) {
  std::string s = spec;
  auto trim = [](std::string& t) {
    auto b = t.find_first_not_of(" \t\r\n");
    auto e = t.find_last_not_of(" \t\r\n");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  std::string head = s, rest;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    head = s.substr(0, colon);
    rest = s.substr(colon + 1);
  }
  auto param = [&](const std::string& key) {
    auto eq = rest.find('=');
    if (eq == std::string::npos || rest.substr(0, eq) != key) {
      throw std::invalid_argument("model '" + head + "' expects parameter '" +
                                  key + "=...'");
    }
    return rest.substr(eq + 1);
  };
  if (head == "exponential") {
    if (!rest.empty()) throw std::invalid_argument("exponential takes no parameters");
    return QualityModel::exponential();
  }
  if (head == "uniform") {
    if (!rest.empty()) throw std::invalid_argument("uniform takes no parameters");
    return QualityModel::uniform();
  }
  if (head == "normal") {
    if (!rest.empty()) throw std::invalid_argument("normal takes no parameters");
    return QualityModel::normal();
  }
  if (head == "pareto") {
    double a;
    if (!parse_double(param("alpha"), a)) {
      throw std::invalid_argument("pareto: bad alpha value");
    }
    return QualityModel::pareto(a);
  }
  if (head == "bernoulli") {
    double p;
    if (!parse_double(param("p"), p)) {
      throw std::invalid_argument("bernoulli: bad p value");
    }
    return QualityModel::bernoulli(p);
  }
  if (head == "classical") {
    long n;
    if (!parse_long(param("n"), n)) {
      throw std::invalid_argument("classical: bad n value");
    }
    return QualityModel::classical_indicator(n);
  }
  if (head == "permutation") {
    long n;
    if (!parse_long(param("n"), n)) {
      throw std::invalid_argument("permutation: bad n value");
    }
    return QualityModel::permutation(n);
  }
  if (head == "multiset") {
    return QualityModel::finite_multiset(read_value_file(param("file")));
  }
  if (head == "cdf") {
    std::string path = param("table");
    auto [xs, fs] = read_cdf_table(path);
    return QualityModel::cdf_table(std::move(xs), std::move(fs),
                                   "cdf:table=" + path);
  }
  throw std::invalid_argument("unknown model: '" + spec + "'");
}

}  // namespace stopwise
