#include "msq/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "msq/error.hpp"

namespace msq {

namespace {

constexpr double ln2 = 0.6931471805599453;

/// Smallest k with t^k >= n.
auto ceil_log_int(int t, long long n) -> int {
  int k = 0;
  long long power = 1;
  while (power < n) {
    if (power > std::numeric_limits<long long>::max() / t)
      throw_domain("ceil_log overflow");
    power *= t;
    ++k;
  }
  return k;
}

}  // namespace

auto min_m(long long count) -> int {
  if (count < 1)
    throw_usage("min_m needs a positive count, got " + std::to_string(count));
  unsigned long long factorial = 1;
  int m = 1;
  while (factorial < static_cast<unsigned long long>(count)) {
    ++m;
    if (factorial >
        std::numeric_limits<unsigned long long>::max() / static_cast<unsigned long long>(m))
      return m;
    factorial *= static_cast<unsigned long long>(m);
  }
  return m;
}

auto log2_factorial(long long m) -> double {
  if (m < 0) throw_usage("log2_factorial needs m >= 0");
  return std::lgamma(static_cast<double>(m) + 1.0) / ln2;
}

auto counting_lower_bound(int n) -> int {
  if (n < 4) throw_usage("counting_lower_bound needs n >= 4");
  // Compare 2^(k log2 k) against 2^n - 1 - k via base-2 logarithms. The
  // right side is n up to a correction that vanishes for large n.
  auto holds = [n](int k) -> bool {
    double lhs = static_cast<double>(k) * std::log2(static_cast<double>(k));
    double rhs;
    if (n <= 50) {
      double remaining = std::ldexp(1.0, n) - 1.0 - static_cast<double>(k);
      if (remaining <= 0) return true;
      rhs = std::log2(remaining);
    } else {
      rhs = static_cast<double>(n) +
            std::log1p(-(static_cast<double>(k) + 1.0) *
                       std::ldexp(1.0, -n)) /
                ln2;
    }
    return lhs >= rhs;
  };
  int k = 1;
  while (!holds(k)) ++k;
  return k;
}

auto stirling_threshold(int t, int window) -> long long {
  if (t < 2) throw_usage("stirling_threshold needs t >= 2");
  if (window < 1) throw_usage("stirling_threshold needs a positive window");
  long long last_failure = 0;
  for (long long n = 1;; ++n) {
    int k = ceil_log_int(t, n);
    if (log2_factorial(k) < std::log2(static_cast<double>(n)))
      last_failure = n;
    if (n >= last_failure + window) return last_failure + 1;
  }
}

auto realr_threshold(double r, int window) -> long long {
  if (!(r > 2.0)) throw_usage("realr_threshold needs r > 2");
  if (window < 1) throw_usage("realr_threshold needs a positive window");
  double log2_r = std::log2(r);
  long long last_failure = 1;
  for (long long n = 2;; ++n) {
    double log_r_n = std::log2(static_cast<double>(n)) / log2_r;
    auto m = static_cast<long long>(
        std::ceil(static_cast<double>(n) / log_r_n));
    if (log2_factorial(m) < static_cast<double>(n)) last_failure = n;
    if (n >= last_failure + window) return last_failure + 1;
  }
}

}  // namespace msq
