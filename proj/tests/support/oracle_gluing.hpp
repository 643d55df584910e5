#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "folia/series.hpp"

namespace oracle {

using folia::Coefficient;
using folia::Series2;

/// Solves F0(x * p(x,y), y) == F for the coefficients of p by Gaussian
/// elimination over all monomials, returning nullopt when the solution is
/// not unique.
inline std::optional<Series2> solve_axis_fixing(const Series2& F, int k) {
  const int n = F.order();
  std::vector<std::pair<int, int>> unknowns;
  for (int d = 0; d + 1 + k <= n; ++d)
    for (int j = 0; j <= d; ++j) unknowns.push_back({d - j, j});
  std::vector<std::pair<int, int>> eqs;
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) eqs.push_back({d - j, j});
  const std::size_t m = unknowns.size();
  std::vector<std::vector<Coefficient>> A;
  for (auto [i, j] : eqs) {
    std::vector<Coefficient> row(m + 1);
    for (std::size_t u = 0; u < m; ++u) {
      // x * x^a y^b * y^k
      if (unknowns[u].first + 1 == i && unknowns[u].second + k == j) row[u] = 1;
    }
    row[m] = F.coeff(i, j) - ((i == 0 && j == 1) ? Coefficient(1) : Coefficient(0));
    A.push_back(row);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = r;
    while (piv < A.size() && A[piv][c].is_zero()) ++piv;
    if (piv == A.size()) return std::nullopt;
    std::swap(A[r], A[piv]);
    for (std::size_t s = 0; s < A.size(); ++s)
      if (s != r && !A[s][c].is_zero()) {
        const Coefficient q = A[s][c] / A[r][c];
        for (std::size_t t = c; t <= m; ++t) A[s][t] -= q * A[r][t];
      }
    ++r;
  }
  for (std::size_t s = r; s < A.size(); ++s)
    if (!A[s][m].is_zero()) return std::nullopt;
  Series2 p(n - k - 1);
  for (std::size_t u = 0; u < m; ++u) p.set(unknowns[u].first, unknowns[u].second, A[u][m] / A[u][u]);
  return p;
}

}  // namespace oracle
