#include <qdc/analytic.hpp>
#include <qdc/error.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace qdc;
using namespace qdc::analytic;

namespace {

// Stationary distribution from the birth-death balance equations
// P(n) mu min(n, K) = P(n-1) lambda, normalised numerically. Independent of
// the closed forms under test.
std::vector<double> balance_distribution(double lambda, double mu,
                                         std::uint32_t k) {
  std::vector<double> p{1.0};
  double total = 1.0;
  for (std::size_t n = 1;; ++n) {
    double const rate = mu * static_cast<double>(std::min<std::size_t>(n, k));
    double const next = p.back() * lambda / rate;
    p.push_back(next);
    total += next;
    if (n > k && next < 1e-18 * total) {
      break;
    }
  }
  for (auto& v : p) {
    v /= total;
  }
  return p;
}

double series_mean(std::vector<double> const& p) {
  double mean = 0.0;
  for (std::size_t n = 0; n != p.size(); ++n) {
    mean += static_cast<double>(n) * p[n];
  }
  return mean;
}

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MmkParameters(0, 1, 1), invalid_input_error);
  CHECK_THROWS_AS(MmkParameters(1, -1, 1), invalid_input_error);
  CHECK_THROWS_AS(MmkParameters(1, 1, 0), invalid_input_error);
  CHECK_THROWS_AS(MmkParameters(INFINITY, 1, 1), invalid_input_error);
}

TEST_CASE("rho") {
  CHECK(rho({2, 1, 3}) == doctest::Approx(2.0 / 3.0));
  CHECK(rho({1, 1.0 / 0.9, 2}) == doctest::Approx(0.45));
  CHECK(rho({1.5, 1.5, 1}) == 1.0);
}

TEST_CASE("unstable systems are rejected") {
  MmkParameters critical(1.5, 1.5, 1);
  CHECK_THROWS_AS(mmk_p(critical, 0), unstable_system_error);
  CHECK_THROWS_AS(mmk_expected_n(critical), unstable_system_error);
  CHECK_THROWS_AS(mmk_expected_wait({7, 1, 3}), unstable_system_error);
}

TEST_CASE("three servers, lambda 2, mu 1") {
  MmkParameters p(2, 1, 3);
  CHECK(mmk_p(p, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(mmk_expected_n(p) == doctest::Approx(26.0 / 9.0).epsilon(1e-13));
  CHECK(mmk_expected_wait(p) == doctest::Approx(4.0 / 9.0).epsilon(1e-13));

  double total = 0.0;
  for (std::uint64_t n = 0; n <= 200; ++n) {
    total += mmk_p(p, n);
  }
  CHECK(std::fabs(total - 1.0) <= 1e-12);

  auto const oracle = balance_distribution(2, 1, 3);
  for (std::uint64_t n = 0; n != 30; ++n) {
    CHECK(mmk_p(p, n) == doctest::Approx(oracle[n]).epsilon(1e-12));
  }
  CHECK(std::fabs(mmk_expected_n(p) - series_mean(oracle)) <= 1e-9);
  CHECK(std::fabs(mmk_expected_n(p) -
                  p.lambda * (mmk_expected_wait(p) + 1.0 / p.mu)) <= 1e-9);
}

TEST_CASE("single server reduces to M/M/1") {
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    MmkParameters p(r, 1.0, 1);
    CHECK(mmk_p(p, 0) == doctest::Approx(1.0 - r).epsilon(1e-12));
    CHECK(mmk_p(p, 3) == doctest::Approx((1 - r) * r * r * r).epsilon(1e-12));
    CHECK(mmk_expected_n(p) == doctest::Approx(r / (1 - r)).epsilon(1e-12));
    CHECK(mmk_expected_wait(p) ==
          doctest::Approx(r / (1.0 * (1 - r))).epsilon(1e-12));
  }
  MmkParameters half(0.5, 1.0, 1);
  CHECK(mmk_expected_n(half) == doctest::Approx(1.0));
  CHECK(mmk_expected_wait(half) == doctest::Approx(1.0));
}

TEST_CASE("closed forms agree with the balance equations on a grid") {
  for (std::uint32_t k : {1u, 2u, 5u, 20u, 100u}) {
    for (double r : {0.2, 0.6, 0.9}) {
      double const mu = 0.7;
      double const lambda = r * k * mu;
      MmkParameters p(lambda, mu, k);
      auto const oracle = balance_distribution(lambda, mu, k);
      double total = 0.0;
      for (std::uint64_t n = 0; n != oracle.size(); ++n) {
        double const pn = mmk_p(p, n);
        total += pn;
        REQUIRE(std::fabs(pn - oracle[n]) <= 1e-12);
      }
      CHECK(std::fabs(total - 1.0) <= 1e-10);
      CHECK(std::fabs(mmk_expected_n(p) - series_mean(oracle)) <=
            1e-9 * std::max(1.0, series_mean(oracle)));
      CHECK(std::fabs(mmk_expected_n(p) -
                      lambda * (mmk_expected_wait(p) + 1.0 / mu)) <=
            1e-9 * mmk_expected_n(p));
    }
  }
}

TEST_CASE("large server counts stay finite") {
  MmkParameters p(450, 1, 500);
  CHECK(std::isfinite(mmk_p(p, 0)));
  CHECK(mmk_p(p, 0) > 0.0);
  CHECK(mmk_expected_n(p) >= 450.0);
  CHECK(std::isfinite(mmk_expected_wait(p)));
}

} // TEST_SUITE
