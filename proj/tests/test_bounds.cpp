#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <msq/bounds.hpp>
#include <msq/error.hpp>

using namespace msq;

namespace {

/// Exact factorial for small m; large enough for every min_m answer probed
/// here.
auto factorial(int m) -> unsigned long long {
  unsigned long long out = 1;
  for (int i = 2; i <= m; ++i) {
    out *= static_cast<unsigned long long>(i);
  }
  return out;
}

}  // namespace

TEST_CASE("min_m answers the documented examples") {
  CHECK(min_m(255) == 6);
  CHECK(min_m(1) == 1);
  CHECK(min_m(6) == 3);
  CHECK(min_m(2) == 2);
  CHECK(min_m(7) == 4);
  CHECK(min_m(24) == 4);
  CHECK(min_m(25) == 5);
}

TEST_CASE("min_m is the least factorial cover") {
  for (long long count = 1; count <= 50000; ++count) {
    int m = min_m(count);
    CAPTURE(count);
    REQUIRE(factorial(m) >= static_cast<unsigned long long>(count));
    if (m > 1) {
      REQUIRE(factorial(m - 1) < static_cast<unsigned long long>(count));
    }
  }
}

TEST_CASE("min_m handles huge counts without overflow") {
  CHECK(min_m(1000000000000000000LL) == 20);
  CHECK(min_m(2432902008176640000LL) == 20);   // exactly 20!
  CHECK(min_m(2432902008176640001LL) == 21);
}

TEST_CASE("min_m rejects nonpositive counts") {
  CHECK_THROWS_AS(min_m(0), Error);
  CHECK_THROWS_AS(min_m(-5), Error);
}

TEST_CASE("log2_factorial matches exact small factorials") {
  CHECK(log2_factorial(0) == doctest::Approx(0.0));
  CHECK(log2_factorial(1) == doctest::Approx(0.0));
  CHECK(log2_factorial(4) == doctest::Approx(std::log2(24.0)));
  CHECK(log2_factorial(10) == doctest::Approx(std::log2(3628800.0)));
  double direct = 0;
  for (int i = 2; i <= 60; ++i) {
    direct += std::log2(static_cast<double>(i));
  }
  CHECK(log2_factorial(60) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("counting lower bound at the quoted point") {
  CHECK(counting_lower_bound(64) == 16);
}

TEST_CASE("counting lower bound dominates n over log n") {
  for (int n = 64; n <= 4096; ++n) {
    double floor_value = static_cast<double>(n) / std::log2(n);
    CAPTURE(n);
    REQUIRE(static_cast<double>(counting_lower_bound(n)) >= floor_value);
  }
}

TEST_CASE("counting lower bound is monotone") {
  int previous = counting_lower_bound(4);
  for (int n = 5; n <= 600; ++n) {
    int current = counting_lower_bound(n);
    CAPTURE(n);
    REQUIRE(current >= previous);
    previous = current;
  }
}

TEST_CASE("counting lower bound is the least sufficient k") {
  // Recheck the defining inequality k + 2^(k log k) >= 2^n - 1 on both sides
  // of the returned k, with exact arithmetic where it fits.
  for (int n = 4; n <= 30; ++n) {
    int k = counting_lower_bound(n);
    auto needs = (static_cast<unsigned long long>(1) << n) - 1;
    auto covers = [&](int kk) {
      double lhs = kk + std::exp2(kk * std::log2(static_cast<double>(kk)));
      return lhs >= static_cast<double>(needs);
    };
    CAPTURE(n);
    REQUIRE(covers(k));
    if (k > 1) {
      REQUIRE_FALSE(covers(k - 1));
    }
  }
}

TEST_CASE("counting lower bound rejects tiny n") {
  CHECK_THROWS_AS(counting_lower_bound(3), Error);
  CHECK_THROWS_AS(counting_lower_bound(0), Error);
}

TEST_CASE("stirling threshold for radix 3") {
  CHECK(stirling_threshold(3, 10000) == 730);
}

TEST_CASE("stirling threshold inequality holds past the threshold") {
  long long threshold = stirling_threshold(3, 10000);
  auto holds = [](long long n) {
    int k = 0;
    long long power = 1;
    while (power < n) {
      power *= 3;
      ++k;
    }
    return log2_factorial(k) >= std::log2(static_cast<double>(n));
  };
  REQUIRE_FALSE(holds(threshold - 1));
  for (long long n = threshold; n <= threshold + 10000; ++n) {
    CAPTURE(n);
    REQUIRE(holds(n));
  }
}

TEST_CASE("stirling threshold rejects bad arguments") {
  CHECK_THROWS_AS(stirling_threshold(1, 100), Error);
  CHECK_THROWS_AS(stirling_threshold(3, 0), Error);
}

TEST_CASE("real radix threshold for r = 2.5") {
  long long threshold = realr_threshold(2.5, 200);
  CHECK(threshold == 7261289);
  auto holds = [](long long n) {
    double log_r_n = std::log2(static_cast<double>(n)) / std::log2(2.5);
    auto m = static_cast<long long>(
        std::ceil(static_cast<double>(n) / log_r_n));
    return log2_factorial(m) >= static_cast<double>(n);
  };
  REQUIRE_FALSE(holds(threshold - 1));
  for (long long n = threshold; n <= threshold + 200; ++n) {
    CAPTURE(n);
    REQUIRE(holds(n));
  }
}

TEST_CASE("real radix threshold rejects bad arguments") {
  CHECK_THROWS_AS(realr_threshold(2.0, 100), Error);
  CHECK_THROWS_AS(realr_threshold(1.5, 100), Error);
  CHECK_THROWS_AS(realr_threshold(2.5, 0), Error);
}
