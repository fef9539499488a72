#pragma once

namespace msq {

/// Smallest m >= 1 with m! >= count.
auto min_m(long long count) -> int;

/// log2(m!), computed through lgamma so large m never overflows.
auto log2_factorial(long long m) -> double;

/// Smallest k such that k-quantifier sentences are numerous enough to give
/// every subset of n-bit strings its own separating sentence:
/// k + 2^(k log2 k) >= 2^n - 1, evaluated in the log domain.
auto counting_lower_bound(int n) -> int;

/// Smallest n from which ceil(log_t n)! >= n holds for every value in the
/// next `window` integers.
auto stirling_threshold(int t, int window) -> long long;

/// Smallest n from which ceil(n / log_r n)! >= 2^n holds for every value in
/// the next `window` integers, checked in the log domain.
auto realr_threshold(double r, int window) -> long long;

}  // namespace msq
