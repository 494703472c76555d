#ifndef FROBSPLIT_LINALG_HPP
#define FROBSPLIT_LINALG_HPP

#include <cassert>
#include <optional>
#include <vector>

#include "frobsplit/field.hpp"

namespace frobsplit {

/// Dense matrix over a FieldSpec field, for the small exact linear algebra
/// this project needs: ranks, kernels, solves, inverses. Pivoting always
/// picks the first nonzero entry, so results are deterministic.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(FieldSpecPtr spec, int rows, int cols)
      : spec_(std::move(spec)), rows_(rows), cols_(cols), a_(rows * cols, FieldElement::zero(spec_)) {}

  static FMatrix identity(const FieldSpecPtr& spec, int n) {
    FMatrix m(spec, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(spec);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpecPtr& spec() const { return spec_; }

  FieldElement& at(int i, int j) { return a_[i * cols_ + j]; }
  const FieldElement& at(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const FMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const FMatrix& o) const { return !(*this == o); }

  /// entrywise total order, for deterministic sorting and table lookup
  bool operator<(const FMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (size_t k = 0; k < a_.size(); ++k) {
      if (a_[k] != o.a_[k]) return a_[k] < o.a_[k];
    }
    return false;
  }

  friend FMatrix operator*(const FMatrix& x, const FMatrix& y) {
    assert(x.cols_ == y.rows_);
    FMatrix r(x.spec_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          if (y.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
        }
      }
    return r;
  }

  friend FMatrix operator+(const FMatrix& x, const FMatrix& y) {
    assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
    FMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] + y.a_[k];
    return r;
  }

  friend FMatrix operator-(const FMatrix& x, const FMatrix& y) {
    assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
    FMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] - y.a_[k];
    return r;
  }

  friend FMatrix operator*(const FieldElement& c, const FMatrix& y) {
    FMatrix r = y;
    for (auto& v : r.a_) v = c * v;
    return r;
  }

  std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    std::vector<FieldElement> out(rows_, FieldElement::zero(spec_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + at(i, j) * v[j];
    return out;
  }

  FMatrix pow(long long e) const {
    assert(rows_ == cols_);
    FMatrix result = identity(spec_, rows_), base = *this;
    while (e > 0) {
      if (e & 1LL) result = result * base;
      if (e >>= 1) base = base * base;
    }
    return result;
  }

  FMatrix transform_entries(FieldElement (FieldElement::*fn)(int) const, int arg) const {
    FMatrix r = *this;
    for (auto& v : r.a_) v = (v.*fn)(arg);
    return r;
  }

  /// reduced row-echelon form; returns pivot column indices
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int sel = -1;
      for (int i = row; i < rows_; ++i) {
        if (!at(i, col).is_zero()) {
          sel = i;
          break;
        }
      }
      if (sel < 0) continue;
      if (sel != row)
        for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
      FieldElement inv = at(row, col).inverse();
      for (int j = col; j < cols_; ++j) at(row, j) = inv * at(row, j);
      for (int i = 0; i < rows_; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        FieldElement f = at(i, col);
        for (int j = col; j < cols_; ++j) at(i, j) = at(i, j) - f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    FMatrix m = *this;
    return static_cast<int>(m.rref().size());
  }

  /// basis of {v : Av = 0}, from the RREF free columns; deterministic
  std::vector<std::vector<FieldElement>> kernel_basis() const {
    FMatrix m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<FieldElement> v(cols_, FieldElement::zero(spec_));
      v[free] = FieldElement::one(spec_);
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// one solution of Ax = b, or nullopt if inconsistent
  std::optional<std::vector<FieldElement>> solve(const std::vector<FieldElement>& b) const {
    assert(static_cast<int>(b.size()) == rows_);
    FMatrix aug(spec_, rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<FieldElement> x(cols_, FieldElement::zero(spec_));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), cols_);
    return x;
  }

  std::optional<FMatrix> inverse() const {
    assert(rows_ == cols_);
    FMatrix aug(spec_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = FieldElement::one(spec_);
    }
    std::vector<int> pivots = aug.rref();
    if (static_cast<int>(pivots.size()) < rows_ || pivots[rows_ - 1] != rows_ - 1) return std::nullopt;
    FMatrix inv(spec_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  std::string to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
      out += i ? ",[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) out += ",";
        out += at(i, j).to_string();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  FieldSpecPtr spec_;
  int rows_ = 0, cols_ = 0;
  std::vector<FieldElement> a_;
};

/// stack matrices vertically
inline FMatrix vstack(const std::vector<FMatrix>& mats) {
  assert(!mats.empty());
  int cols = mats[0].cols(), rows = 0;
  for (const auto& m : mats) rows += m.rows();
  FMatrix out(mats[0].spec(), rows, cols);
  int r = 0;
  for (const auto& m : mats) {
    for (int i = 0; i < m.rows(); ++i, ++r)
      for (int j = 0; j < cols; ++j) out.at(r, j) = m.at(i, j);
  }
  return out;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_LINALG_HPP
