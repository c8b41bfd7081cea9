#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "rslab/error.hpp"
#include "rslab/numeric.hpp"
#include "rslab/sums.hpp"
#include "support.hpp"

using namespace rslab;
using rslab::testing::integral_of_delta;
using rslab::testing::lab;

namespace {

std::vector<double> divisor_over_log(std::size_t N) {
  std::vector<double> d(N + 1, 0.0);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i; j <= N; j += i) d[j] += 1.0;
  std::vector<double> c(N);
  c[0] = 1.0;  // d(1)/log 1 is undefined
  for (std::size_t n = 2; n <= N; ++n) c[n - 1] = d[n] / std::log(static_cast<double>(n));
  return c;
}

}  // namespace

TEST_SUITE("sums") {
  TEST_CASE("main constant on synthetic c = 1") {
    const CoeffTable ones = CoeffTable::from_values(std::vector<double>(20000, 1.0));
    const MainTermConstant C = estimate_main_constant(ones);
    CHECK(C.method == ConstantMethod::riesz_fit);
    CHECK(C.value == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& m : main_constant_candidates(ones)) CHECK(m.value == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("d(n)/log n has no stable linear main term") {
    const CoeffTable ct = CoeffTable::from_values(divisor_over_log(100000));
    try {
      estimate_main_constant(ct);
      FAIL("expected EstimationFailure");
    } catch (const EstimationFailure& e) {
      const auto& accepted = e.estimates()[static_cast<int>(ConstantMethod::riesz_fit)];
      CHECK(accepted.std_error / accepted.value >= 0.01);
      CHECK(e.estimates()[0].method == ConstantMethod::prefix_fit);
      CHECK(e.estimates()[2].method == ConstantMethod::b_series);
    }
  }

  TEST_CASE("main constant on the real table") {
    const MainTermConstant& C = lab().C;
    CHECK(C.n_max == 100000);
    CHECK(C.value == doctest::Approx(0.631797892360).epsilon(1e-9));
    CHECK(C.std_error == doctest::Approx(1.37e-5).epsilon(0.02));
    CHECK(C.std_error / C.value < 0.01);
    const auto all = main_constant_candidates(lab().ct);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK(std::abs(all[i].value - all[j].value) <= 3 * std::hypot(all[i].std_error, all[j].std_error));
    CHECK_THROWS_AS(estimate_main_constant(CoeffTable::from_values(std::vector<double>(9999, 1.0))),
                    std::invalid_argument);
  }

  TEST_CASE("riesz_error examples") {
    const auto& L = lab();
    const ErrorTermEvaluator ev0(L.ct, L.C, 0.0);
    CHECK(ev0.riesz_error(1.5) == doctest::Approx(L.ct.c(1) - 1.5 * L.C.value).epsilon(1e-15));

    const CoeffTable single = CoeffTable::from_values({1.0, 0.0, 0.0});
    const double C = 0.6;
    const ErrorTermEvaluator ev1(single, C, 1.0);
    CHECK(ev1.riesz_error(std::exp(1.0)) == doctest::Approx(1.0 - C * std::exp(1.0)).epsilon(1e-15));

    // extended-precision naive sum at xi = 1/2
    using Big = boost::multiprecision::cpp_bin_float_50;
    const ErrorTermEvaluator half(L.ct, L.C, 0.5);
    Big sum = 0;
    for (std::size_t n = 1; n <= 100; ++n) sum += Big(L.ct.c(n)) * sqrt(log(Big(100) / Big(n)));
    const Big oracle = sum / (sqrt(boost::math::constants::pi<Big>()) / 2) - Big(L.C.value) * 100;
    CHECK(half.riesz_error(100.0) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-10));
  }

  TEST_CASE("range and parameter errors") {
    const auto& L = lab();
    const ErrorTermEvaluator ev(L.ct, L.C, 0.3);
    CHECK_THROWS_AS(ev.riesz_error(0.5), std::invalid_argument);
    CHECK_THROWS_AS(ev.riesz_error(100001.0), InsufficientTable);
    CHECK_THROWS_AS(ev.delta1(0.99), std::invalid_argument);
    CHECK_THROWS_AS(ev.delta1(2e5), InsufficientTable);
    CHECK_THROWS_AS(ErrorTermEvaluator(L.ct, L.C, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ErrorTermEvaluator(L.ct, L.C, 1.01), std::invalid_argument);
    CHECK(ev.riesz_error(100000.0) == doctest::Approx(ev.riesz_error_direct(100000.0)));
  }

  TEST_CASE("xi = 1 fast path equals direct summation") {
    const auto& L = lab();
    const ErrorTermEvaluator ev(L.ct, L.C, 1.0);
    for (double x : log_grid(10.0, 1e5, 40)) {
      const double fast = ev.riesz_error(x), slow = ev.riesz_error_direct(x);
      INFO("x = " << x);
      CHECK(std::abs(fast - slow) <= 1e-10 * std::abs(slow));
    }
  }

  TEST_CASE("continuity for xi > 0 and the jump c_n at xi = 0") {
    const auto& L = lab();
    for (double xi : {0.1, 0.5, 1.0}) {
      const ErrorTermEvaluator ev(L.ct, L.C, xi);
      for (std::size_t n : {10u, 97u, 500u, 1000u, 4096u}) {
        const double h = 1e-12 * n;
        const double jump = ev.riesz_error_direct(n) - ev.riesz_error_direct(n - h);
        INFO("xi = " << xi << ", n = " << n);
        CHECK(std::abs(jump) <= 1e-9 * L.ct.c(n));
      }
    }
    const ErrorTermEvaluator ev0(L.ct, L.C, 0.0);
    for (std::size_t n : {10u, 97u, 500u, 1000u, 4096u}) {
      const double jump = ev0.riesz_error(n) - ev0.riesz_error(std::nextafter(static_cast<double>(n), 0.0));
      CHECK(jump == doctest::Approx(L.ct.c(n)).epsilon(1e-9));
    }
  }

  TEST_CASE("pointwise growth guard") {
    const auto& L = lab();
    for (double xi : {0.0, 0.5, 1.0}) {
      const ErrorTermEvaluator ev(L.ct, L.C, xi);
      const double e = (3.0 - 2.0 * xi) / 5.0 + 0.05;
      auto block_max = [&](double lo, double hi) {
        double m = 0;
        for (double x : log_grid(lo, hi, 64)) m = std::max(m, std::abs(ev.riesz_error(x)) / std::pow(x, e));
        return m;
      };
      double running = block_max(10.0, 64.0);
      for (int k = 6; k < 16; ++k) {
        const double next = std::max(running, block_max(std::ldexp(1.0, k), std::ldexp(1.0, k + 1)));
        INFO("xi = " << xi << ", extension to 2^" << k + 1);
        CHECK(next <= running);
        running = next;
      }
    }
  }

  TEST_CASE("delta1 examples") {
    const auto& L = lab();
    const ErrorTermEvaluator ev(L.ct, L.C, 0.0);
    CHECK(ev.delta1(1.0) == doctest::Approx(-L.C.value / 2).epsilon(1e-15));
    CHECK(ev.delta1(2.0) == doctest::Approx(integral_of_delta(ev, 0.0, 2.0)).epsilon(1e-12));
    for (double x : {7.5, 123.25, 4000.0}) CHECK(ev.delta1(x) == doctest::Approx(integral_of_delta(ev, 0.0, x)).epsilon(1e-12));
    // defined through Delta(u; 0) whatever the evaluator's xi
    CHECK(ev.with_xi(0.7).delta1(300.5) == ev.delta1(300.5));
  }

  TEST_CASE("delta1 additivity") {
    const auto& L = lab();
    const ErrorTermEvaluator ev(L.ct, L.C, 0.0);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(1.0, 3000.0);
    for (int i = 0; i < 20; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const double lhs = ev.delta1(a) + integral_of_delta(ev, a, b);
      CHECK(lhs == doctest::Approx(ev.delta1(b)).epsilon(1e-10).scale(std::abs(ev.delta1(b)) + b));
    }
  }

  TEST_CASE("delta1 identity scan") {
    const auto& L = lab();
    const ErrorTermEvaluator ev1(L.ct, L.C, 1.0);
    const std::vector<double> single{500.0};
    const IdentityReport one = delta1_identity_scan(ev1, single);
    CHECK(one.points == 1);
    CHECK(one.argmax == 500.0);
    CHECK(one.max_stat == std::abs(ev1.riesz_error(500.0) - ev1.delta1(500.0) / 500.0) / std::pow(500.0, 0.1));

    const IdentityReport r = delta1_identity_scan(ev1, log_grid(10.0, 1e4, 200));
    const IdentityReport r2 = delta1_identity_scan(ev1, log_grid(10.0, 1e4, 399));
    CHECK(r.max_stat <= 0.80);
    CHECK(r2.max_stat <= r.max_stat * (1 + 1e-12));
    CHECK(r2.max_stat >= r.max_stat * (1 - 1e-12));

    CHECK_THROWS_AS(delta1_identity_scan(ev1.with_xi(0.0), single), std::invalid_argument);
    const std::vector<double> outside{5.0};
    CHECK_THROWS_AS(delta1_identity_scan(ev1, outside), std::invalid_argument);
  }
}
