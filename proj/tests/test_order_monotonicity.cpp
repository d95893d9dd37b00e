#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stopwise/combinatorics.hpp"
#include "stopwise/order_monotonicity.hpp"
#include "stopwise/quality_model.hpp"
#include "stopwise/rng.hpp"

using namespace stopwise;

namespace {

std::vector<double> random_pool(RngStream& rng, long m, double lo, double hi) {
  std::vector<double> v(m);
  for (long i = 0; i < m; ++i) v[i] = lo + (hi - lo) * rng.next_unit();
  return v;
}

}  // namespace

TEST_CASE("derivative table matches the recurrence and the expansion") {
  for (const QualityModel& m :
       {QualityModel::exponential(), QualityModel::uniform(),
        QualityModel::pareto(2.2), QualityModel::bernoulli(0.4)}) {
    const long n = 40;
    std::vector<double> mu_seq = m.mu_sequence(n);
    DerivativeTable table = build_derivative_table(mu_seq, 6);
    REQUIRE(table.j_max == 6);
    for (int j = 0; j <= 6; ++j) {
      for (long k = 1; k + j <= n; ++k) {
        double rec = discrete_derivative(mu_seq, j, k);
        CHECK(table.at(j, k) == doctest::Approx(rec).epsilon(1e-12));
        // binomial expansion, assembled independently
        double sum = 0.0;
        for (int i = 0; i <= j; ++i) {
          double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
          sum += sign * binomial_double(j, i) * mu_seq[k - 1 + i];
        }
        double scale = std::fmax(1.0, std::fabs(sum));
        CHECK(std::fabs(rec - sum) < 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("first and second derivatives are plain differences") {
  QualityModel m = QualityModel::exponential();
  std::vector<double> mu_seq = m.mu_sequence(12);
  for (long k = 1; k <= 11; ++k) {
    CHECK(discrete_derivative(mu_seq, 1, k) ==
          doctest::Approx(mu_seq[k] - mu_seq[k - 1]).epsilon(1e-15));
  }
  for (long k = 1; k <= 10; ++k) {
    CHECK(discrete_derivative(mu_seq, 2, k) ==
          doctest::Approx(mu_seq[k + 1] - 2.0 * mu_seq[k] + mu_seq[k - 1])
              .epsilon(1e-13));
  }
  CHECK(discrete_derivative(mu_seq, 0, 5) == mu_seq[4]);
  CHECK_THROWS_AS(discrete_derivative(mu_seq, 1, 12), std::out_of_range);
  CHECK_THROWS_AS(discrete_derivative(mu_seq, -1, 1), std::out_of_range);
  CHECK_THROWS_AS(discrete_derivative(mu_seq, 12, 1), std::out_of_range);
}

TEST_CASE("derivative signs alternate for the standard families") {
  for (const QualityModel& m :
       {QualityModel::exponential(), QualityModel::uniform(),
        QualityModel::pareto(1.5), QualityModel::bernoulli(0.07),
        QualityModel::permutation(40),
        QualityModel::classical_indicator(40)}) {
    std::vector<double> mu_seq = m.mu_sequence(40);
    auto bad = sign_alternation_check(mu_seq, 12);
    CHECK(bad.empty());
  }
  std::vector<double> mu_norm = QualityModel::normal().mu_sequence(24);
  CHECK(sign_alternation_check(mu_norm, 6).empty());
}

TEST_CASE("alternation check flags a planted violation") {
  QualityModel m = QualityModel::uniform();
  std::vector<double> mu_seq = m.mu_sequence(20);
  mu_seq[9] += 0.02;  // dent the concavity
  auto bad = sign_alternation_check(mu_seq, 3);
  CHECK_FALSE(bad.empty());
}

TEST_CASE("exchangeable derivative identity holds in doubles") {
  RngStream rng(2024, 0);
  for (int trial = 0; trial < 60; ++trial) {
    long m = 3 + static_cast<long>(rng.next_below(10));  // up to 12
    std::vector<double> pool = random_pool(rng, m, -5.0, 5.0);
    OrderStatTable table = order_stat_means(pool);
    for (int j = 1; j + 1 <= m; ++j) {
      for (long k = 1; k + j <= m; ++k) {
        double resid = prop3_identity_residual(table, j, k);
        CHECK(std::fabs(resid) < 1e-10);
      }
    }
  }
  OrderStatTable table = order_stat_means(std::vector<double>{1.0, 2.0, 4.0});
  CHECK_THROWS_AS(prop3_identity_residual(table, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(prop3_identity_residual(table, 3, 1), std::out_of_range);
}

TEST_CASE("exchangeable derivative identity is exact on rationals") {
  RngStream rng(77, 1);
  for (int trial = 0; trial < 40; ++trial) {
    long m = 2 + static_cast<long>(rng.next_below(7));  // up to 8
    std::vector<long long> pool(m);
    for (long i = 0; i < m; ++i) {
      pool[i] = static_cast<long long>(rng.next_below(11)) - 5;
    }
    for (int j = 1; j < m; ++j) {
      for (long k = 1; k + j <= m; ++k) {
        Rational resid = prop3_identity_residual_exact(pool, j, k);
        CHECK(resid.is_zero());
      }
    }
  }
}

TEST_CASE("rational identity survives adversarial pools") {
  std::vector<std::vector<long long>> pools = {
      {0, 0, 0, 0, 0, 0, 0, 1},
      {-5, -5, -5, 5, 5, 5},
      {1, 2, 3, 4, 5, 6, 7, 8},
      {5, 5, 5, 5},
      {-1, 0, 1},
  };
  for (const auto& pool : pools) {
    long m = static_cast<long>(pool.size());
    for (int j = 1; j < m; ++j) {
      for (long k = 1; k + j <= m; ++k) {
        CHECK(prop3_identity_residual_exact(pool, j, k).is_zero());
      }
    }
  }
}
