#include <cmath>
#include <set>

#include "doctest.h"
#include "stopwise/normal.hpp"
#include "stopwise/quadrature.hpp"
#include "stopwise/rational.hpp"
#include "stopwise/rng.hpp"
#include "stopwise/summation.hpp"

using namespace stopwise;

TEST_CASE("harmonic ranges") {
  CHECK(harmonic_range(1, 1) == 1.0);
  CHECK(harmonic_range(2, 1) == 0.0);
  CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  // H_10000 against the asymptotic expansion ln n + gamma + 1/(2n) - 1/(12n^2)
  double n = 10000.0;
  double ref = std::log(n) + 0.577215664901532861 + 1.0 / (2.0 * n) -
               1.0 / (12.0 * n * n);
  CHECK(harmonic_number(10000) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("kahan sum keeps tiny terms") {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i) s.add(1e-17);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-11).epsilon(1e-14));
}

TEST_CASE("adaptive simpson on closed forms") {
  QuadOptions opt;
  opt.abs_tol = 1e-12;
  auto poly = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  CHECK(integrate(poly, 0.0, 2.0, opt) == doctest::Approx(2.0).epsilon(1e-12));
  auto expn = [](double x) { return std::exp(-x); };
  CHECK(integrate(expn, 0.0, 5.0, opt) ==
        doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-12));
  // integrable log singularity
  auto lg = [](double x) { return std::log(x); };
  CHECK(integrate(lg, 1e-14, 1.0, opt) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("adaptive simpson handles a step integrand") {
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  auto step = [](double x) { return x < 0.5 ? 0.0 : 1.0; };
  CHECK(integrate(step, 0.0, 1.0, opt) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("quadrature rejects a non-finite integrand") {
  auto bad = [](double x) { return 1.0 / (x - 0.5); };
  CHECK_THROWS_AS(integrate(bad, 0.5, 1.0), std::domain_error);
}

TEST_CASE("half-line integration") {
  QuadOptions opt;
  opt.abs_tol = 1e-11;
  auto expn = [](double x) { return std::exp(-x); };
  CHECK(integrate_half_line(expn, 0.0, +1, opt) ==
        doctest::Approx(1.0).epsilon(1e-10));
  auto gauss = [](double x) { return std::exp(-0.5 * x * x); };
  double sqrt2pi = std::sqrt(2.0 * M_PI);
  CHECK(integrate_half_line(gauss, 0.0, -1, opt) ==
        doctest::Approx(0.5 * sqrt2pi).epsilon(1e-10));
  // heavy but integrable tail
  auto pareto_tail = [](double x) { return std::pow(x, -1.5); };
  CHECK(integrate_half_line(pareto_tail, 1.0, +1, opt) ==
        doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("normal cdf and quantile invert each other") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959963984540054) ==
        doctest::Approx(0.975).epsilon(1e-12));
  for (double u : {1e-9, 1e-4, 0.02425, 0.3, 0.5, 0.7, 0.97575, 0.9999,
                   1.0 - 1e-9}) {
    double x = normal_quantile(u);
    CHECK(normal_cdf(x) == doctest::Approx(u).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b) == Rational(1, 2));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 18));
  CHECK((a / b) == Rational(2));
  CHECK((a - a).is_zero());
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK(Rational(25, 5).to_string() == "5");
  CHECK(Rational(-2, 4).to_string() == "-1/2");
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  std::set<uint64_t> seen;
  bool equal_ab = true, equal_ac = true, equal_ad = true;
  for (int i = 0; i < 1000; ++i) {
    uint64_t va = a.next();
    equal_ab = equal_ab && va == b.next();
    equal_ac = equal_ac && va == c.next();
    equal_ad = equal_ad && va == d.next();
    seen.insert(va);
  }
  CHECK(equal_ab);
  CHECK_FALSE(equal_ac);
  CHECK_FALSE(equal_ad);
  CHECK(seen.size() == 1000);
}

TEST_CASE("rng unit draws stay inside the open interval") {
  RngStream r(7, 3);
  double lo = 1.0, hi = 0.0, mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = r.next_unit();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    mean += u;
  }
  mean /= n;
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(mean == doctest::Approx(0.5).epsilon(3e-3));
}

TEST_CASE("rng bounded draws are unbiased over small ranges") {
  RngStream r(11, 0);
  long counts[5] = {0, 0, 0, 0, 0};
  const long n = 250000;
  for (long i = 0; i < n; ++i) ++counts[r.next_below(5)];
  for (long k = 0; k < 5; ++k) {
    CHECK(static_cast<double>(counts[k]) / n ==
          doctest::Approx(0.2).epsilon(0.02));
  }
}
