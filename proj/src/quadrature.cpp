#include "stopwise/quadrature.hpp"

#include <cmath>

namespace stopwise {

namespace {

struct Budget {
  long left;
  bool spent = false;
};

double eval_checked(const std::function<double(double)>& f, double x,
                    Budget& budget) {
  if (budget.left-- <= 0) {
    budget.spent = true;
    return 0.0;
  }
  double v = f(x);
  if (!std::isfinite(v)) {
    throw std::domain_error("integrand is not finite at x=" +
                            std::to_string(x));
  }
  return v;
}

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with the err/15 acceptance test. Intervals that
// shrink below the width floor are accepted as-is; for a bounded integrand
// the leftover error there is at most a few ulps of the contribution.
double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, Budget& budget) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = eval_checked(f, lm, budget);
  double frm = eval_checked(f, rm, budget);
  double left = simpson(fa, flm, fm, a, m);
  double right = simpson(fm, frm, fb, m, b);
  double err = left + right - whole;
  double width_floor = 1e-14 * (1.0 + std::fabs(a) + std::fabs(b));
  if (std::fabs(err) <= 15.0 * tol || (b - a) <= width_floor || depth <= 0 ||
      budget.spent) {
    return left + right + err / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate: bad interval");
  }
  if (a == b) return 0.0;
  Budget budget{opt.max_evals};
  double m = 0.5 * (a + b);
  double fa = eval_checked(f, a, budget);
  double fm = eval_checked(f, m, budget);
  double fb = eval_checked(f, b, budget);
  double whole = simpson(fa, fm, fb, a, b);
  double v = adapt(f, a, b, fa, fm, fb, whole,
                   std::fmax(opt.abs_tol, 1e-300), opt.max_depth, budget);
  if (budget.spent) {
    throw QuadratureError("integrate: tolerance not met within budget");
  }
  return v;
}

double integrate_half_line(const std::function<double(double)>& f,
                           double start, int direction,
                           const QuadOptions& opt) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("integrate_half_line: direction must be +-1");
  }
  QuadOptions window_opt = opt;
  window_opt.abs_tol = opt.abs_tol / 8.0;
  double total = 0.0;
  double x0 = start;
  double width = std::fmax(1.0, 0.25 * std::fabs(start));
  int quiet = 0;
  for (int iter = 0; iter < 256; ++iter) {
    double x1 = x0 + direction * width;
    double lo = direction > 0 ? x0 : x1;
    double hi = direction > 0 ? x1 : x0;
    double c = integrate(f, lo, hi, window_opt);
    total += c;
    if (std::fabs(c) < opt.abs_tol / 64.0) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
    x0 = x1;
    width *= 2.0;
  }
  throw QuadratureError("integrate_half_line: tail did not decay");
}

}  // namespace stopwise
