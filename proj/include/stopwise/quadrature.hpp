#pragma once

#include <functional>
#include <stdexcept>

namespace stopwise {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  int max_depth = 60;
  long max_evals = 20'000'000;
};

// Adaptive Simpson on a finite interval [a, b]. Throws std::domain_error when
// the integrand evaluates to a non-finite value and QuadratureError when the
// evaluation budget runs out before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// Integral over the half line starting at `start`, moving up (direction +1)
// or down (direction -1) in doubling windows. Intended for integrands with a
// decreasing envelope away from the core, e.g. CDF tails with finite mean:
// the window sweep stops once several consecutive windows contribute
// negligibly. Throws QuadratureError when the tail never decays.
double integrate_half_line(const std::function<double(double)>& f,
                           double start, int direction,
                           const QuadOptions& opt = {});

}  // namespace stopwise
