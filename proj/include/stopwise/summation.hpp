#pragma once

namespace stopwise {

// Kahan compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// sum_{k=from}^{to} 1/k, zero when from > to. Terms are added smallest first.
inline double harmonic_range(long from, long to) {
  if (from < 1) from = 1;
  KahanSum s;
  for (long k = to; k >= from; --k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

// H_n
inline double harmonic_number(long n) { return harmonic_range(1, n); }

}  // namespace stopwise
