#ifndef FROBSPLIT_MOORE_HPP
#define FROBSPLIT_MOORE_HPP

#include <vector>

#include "frobsplit/poly.hpp"

namespace frobsplit {

/// Rectangular matrix of polynomials sharing one field and level.
struct PolyMatrix {
  std::vector<std::vector<FracPolynomial>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return entries.empty() ? 0 : static_cast<int>(entries[0].size()); }
};

namespace detail {

inline FracPolynomial det_cofactor(const PolyMatrix& m, std::vector<int> rows, std::vector<int> cols) {
  const auto& e = m.entries;
  if (rows.size() == 1) return e[rows[0]][cols[0]];
  FracPolynomial acc = FracPolynomial::zero(e[0][0].spec(), e[0][0].nvars());
  std::vector<int> subrows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < cols.size(); ++j) {
    std::vector<int> subcols;
    for (size_t k = 0; k < cols.size(); ++k)
      if (k != j) subcols.push_back(cols[k]);
    FracPolynomial minor = det_cofactor(m, subrows, subcols);
    FracPolynomial term = e[rows[0]][cols[j]] * minor;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

/// exact determinant: cofactor expansion for size <= 4, fraction-free
/// Bareiss elimination (with exact polynomial division) beyond
inline FracPolynomial poly_determinant(const PolyMatrix& m) {
  int n = m.rows();
  if (n == 0 || n != m.cols()) throw FrobError("determinant requires a nonempty square matrix");
  const auto& probe = m.entries[0][0];
  if (n <= 4) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    return detail::det_cofactor(m, idx, idx);
  }
  // Bareiss
  std::vector<std::vector<FracPolynomial>> a = m.entries;
  FracPolynomial prev = FracPolynomial::one(probe.spec(), probe.nvars());
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k].is_zero()) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          swap = i;
          break;
        }
      if (swap < 0) return FracPolynomial::zero(probe.spec(), probe.nvars());
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        FracPolynomial num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw FrobError("Bareiss exact division failed (internal)");
        a[i][j] = *q;
      }
    prev = a[k][k];
  }
  FracPolynomial det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

/// Moore matrix of the given polynomials: entry (i, j) is columns[j]^(p^i),
/// rows i = 0..m-1. Frobenius powers are exact (freshman's dream).
inline PolyMatrix moore_matrix(const std::vector<FracPolynomial>& columns, int m) {
  if (columns.empty() || m <= 0 || m > static_cast<int>(columns.size()))
    throw FrobError("moore_matrix: need 1 <= m <= #columns");
  PolyMatrix out;
  out.entries.resize(m);
  for (int i = 0; i < m; ++i) {
    out.entries[i].reserve(m);
    for (int j = 0; j < m; ++j) out.entries[i].push_back(columns[j].frobenius_power(i));
  }
  return out;
}

inline FracPolynomial moore_determinant(const std::vector<FracPolynomial>& columns, int m) {
  for (const auto& f : columns)
    if (f.level() != 0) throw FrobError("moore_determinant requires level 0 inputs");
  return poly_determinant(moore_matrix(columns, m));
}

}  // namespace frobsplit

#endif  // FROBSPLIT_MOORE_HPP
