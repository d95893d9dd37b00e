#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stopwise/quality_model.hpp"
#include "stopwise/summation.hpp"
#include "stopwise/value_curve.hpp"

using namespace stopwise;

TEST_CASE("indicator pool at n = 4, worked by hand") {
  QualityModel cls = QualityModel::classical_indicator(4);
  std::vector<double> mu_seq = cls.mu_sequence(4);
  double mu = cls.mu();
  CHECK(value_at(mu_seq, mu, 4, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(value_at(mu_seq, mu, 4, 2) ==
        doctest::Approx(11.0 / 24.0).epsilon(1e-15));
  CHECK(value_at(mu_seq, mu, 4, 3) ==
        doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK(value_at(mu_seq, mu, 4, 4) == doctest::Approx(0.25).epsilon(1e-15));

  ThresholdResult r = optimal_threshold(mu_seq, 4);
  CHECK(r.c_star == 2);
  CHECK(r.v_star == doctest::Approx(11.0 / 24.0).epsilon(1e-15));
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("forward differences telescope the curve") {
  for (const QualityModel& m :
       {QualityModel::exponential(), QualityModel::uniform(),
        QualityModel::bernoulli(0.3), QualityModel::pareto(1.8)}) {
    long n = 40;
    std::vector<double> mu_seq = m.mu_sequence(n);
    double mu = m.mu();
    for (long c = 1; c <= n - 1; ++c) {
      double direct =
          value_at(mu_seq, mu, n, c + 1) - value_at(mu_seq, mu, n, c);
      CHECK(forward_diff(mu_seq, n, c) ==
            doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("second differences collapse to one increment") {
  QualityModel m = QualityModel::exponential();
  long n = 30;
  std::vector<double> mu_seq = m.mu_sequence(n);
  for (long c = 1; c <= n - 2; ++c) {
    double direct = forward_diff(mu_seq, n, c + 1) - forward_diff(mu_seq, n, c);
    CHECK(second_diff(mu_seq, c) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(second_diff(mu_seq, c) ==
          doctest::Approx(-(mu_seq[c] - mu_seq[c - 1]) / c).epsilon(1e-15));
    CHECK(second_diff(mu_seq, c) <= 0.0);
  }
}

TEST_CASE("exponential forward differences have a closed form") {
  // Delta V_n(c) = 1/c - H_{n-1}/(n-1): the telescoped sum of (mu_{k+1} -
  // mu_k)/k = 1/(k(k+1)) collapses against the tail term.
  QualityModel m = QualityModel::exponential();
  for (long n : {5L, 50L, 300L}) {
    std::vector<double> mu_seq = m.mu_sequence(n);
    double hn = harmonic_number(n - 1) / static_cast<double>(n - 1);
    for (long c = 1; c <= n - 1; ++c) {
      CHECK(forward_diff(mu_seq, n, c) ==
            doctest::Approx(1.0 / static_cast<double>(c) - hn)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("uniform forward differences have a closed form") {
  // Delta V_n(c) = 1/(2 c (c+1)) - 1/(2n)
  QualityModel m = QualityModel::uniform();
  for (long n : {4L, 25L, 120L}) {
    std::vector<double> mu_seq = m.mu_sequence(n);
    for (long c = 1; c <= n - 1; ++c) {
      double closed = 0.5 / (static_cast<double>(c) * (c + 1.0)) -
                      0.5 / static_cast<double>(n);
      CHECK(forward_diff(mu_seq, n, c) ==
            doctest::Approx(closed).epsilon(1e-13));
    }
  }
}

TEST_CASE("curve ties resolve to the smallest maximizer") {
  // permutation pools tie V(c) = V(c+1) exactly at n = c (c+1)
  QualityModel per = QualityModel::permutation(6);
  std::vector<double> mu_seq = per.mu_sequence(6);
  CHECK(std::fabs(forward_diff(mu_seq, 6, 2)) < 1e-14);
  ValueCurve curve = full_curve(mu_seq, per.mu(), 6);
  CHECK(curve.values[1] == doctest::Approx(curve.values[2]).epsilon(1e-15));
  ThresholdResult r = optimal_threshold(mu_seq, 6);
  CHECK(r.c_star == 2);
  CHECK(argmax_first(curve.values) == 2);
}

TEST_CASE("full curve agrees with pointwise values") {
  for (const QualityModel& m :
       {QualityModel::exponential(), QualityModel::permutation(60),
        QualityModel::finite_multiset({0.0, 0.0, 1.0, 2.5, 2.5, 7.0})}) {
    long n = m.intrinsic_n() > 0 ? m.intrinsic_n() : 60;
    std::vector<double> mu_seq = m.mu_sequence(n);
    double mu = m.mu();
    ValueCurve curve = full_curve(mu_seq, mu, n, m.label());
    REQUIRE(curve.values.size() == static_cast<size_t>(n));
    REQUIRE(curve.diffs.size() == static_cast<size_t>(n - 1));
    for (long c = 1; c <= n; ++c) {
      CHECK(curve.values[c - 1] ==
            doctest::Approx(value_at(mu_seq, mu, n, c)).epsilon(1e-12));
    }
    for (long c = 1; c <= n - 1; ++c) {
      CHECK(curve.diffs[c - 1] ==
            doctest::Approx(forward_diff(mu_seq, n, c)).epsilon(1e-12));
    }
    CHECK(argmax_first(curve.values) == optimal_threshold(mu_seq, n).c_star);
  }
}

TEST_CASE("tiny horizons") {
  QualityModel m = QualityModel::uniform();
  std::vector<double> mu_seq = m.mu_sequence(2);
  ThresholdResult r = optimal_threshold(mu_seq, 2);
  // V_2(1) = V_2(2) = mu for every model, so the smallest maximizer is 1.
  CHECK(r.c_star == 1);
  CHECK(r.v_star == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::isinf(r.harmonic_tail));
  CHECK(r.satisfies_theorem_bound);
  CHECK(value_at(mu_seq, 0.5, 2, 2) == doctest::Approx(0.5).epsilon(1e-15));

  std::vector<double> one = {0.5};
  ThresholdResult r1 = optimal_threshold(one, 1);
  CHECK(r1.c_star == 1);
  CHECK(r1.v_star == doctest::Approx(0.5));
}

TEST_CASE("threshold scan accepts a slack") {
  QualityModel m = QualityModel::exponential();
  std::vector<double> mu_seq = m.mu_sequence(100);
  CHECK(optimal_threshold(mu_seq, 100, 0.0).c_star > 1);
  CHECK(optimal_threshold(mu_seq, 100, 10.0).c_star == 1);
}

TEST_CASE("argument validation") {
  QualityModel m = QualityModel::uniform();
  std::vector<double> mu_seq = m.mu_sequence(10);
  CHECK_THROWS_AS(value_at(mu_seq, 0.5, 10, 0), std::out_of_range);
  CHECK_THROWS_AS(value_at(mu_seq, 0.5, 10, 11), std::out_of_range);
  CHECK_THROWS_AS(forward_diff(mu_seq, 10, 10), std::out_of_range);
  CHECK_THROWS_AS(forward_diff(mu_seq, 10, 0), std::out_of_range);
  CHECK_THROWS_AS(second_diff(mu_seq, 10), std::out_of_range);
  CHECK_THROWS_AS(optimal_threshold(mu_seq, 12), std::invalid_argument);
  CHECK_THROWS_AS(value_at(mu_seq, 0.5, 12, 5), std::invalid_argument);
  CHECK_THROWS_AS(argmax_first(std::vector<double>{}),
                  std::invalid_argument);
}
