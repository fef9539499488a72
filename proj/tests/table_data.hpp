#pragma once

// Frozen expected values for small lengths: the minimal universal-start and
// existential-start round counts, their minimum, and the quantifier rank,
// for every length 1..127. Used as the reference oracle across test
// binaries.

struct TableRow {
  int ell;
  int q_forall;
  int q_exists;
  int q_star;
  int rank;
};

inline auto expected_row(int ell) -> TableRow {
  struct Band {
    int lo;
    int hi;
    int qa;
    int qe;
    int q;
    int r;
  };
  static constexpr Band bands[] = {
      {1, 1, 1, 2, 1, 1},    {2, 2, 2, 2, 2, 2},    {3, 3, 3, 3, 3, 2},
      {4, 4, 3, 3, 3, 3},    {5, 5, 3, 4, 3, 3},    {6, 7, 4, 4, 4, 3},
      {8, 9, 4, 4, 4, 4},    {10, 10, 5, 4, 4, 4},  {11, 15, 5, 5, 5, 4},
      {16, 18, 5, 5, 5, 5},  {19, 21, 5, 6, 5, 5},  {22, 31, 6, 6, 6, 5},
      {32, 37, 6, 6, 6, 6},  {38, 42, 7, 6, 6, 6},  {43, 63, 7, 7, 7, 6},
      {64, 74, 7, 7, 7, 7},  {75, 85, 7, 8, 7, 7},  {86, 127, 8, 8, 8, 7},
  };
  for (const auto& b : bands) {
    if (ell >= b.lo && ell <= b.hi) return {ell, b.qa, b.qe, b.q, b.r};
  }
  return {ell, -1, -1, -1, -1};
}
