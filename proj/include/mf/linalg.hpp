#pragma once

// Dense exact linear algebra over a field element type F (FqScalar in
// practice). Vectors are rows; column order is the caller's monomial order.

#include <cstddef>
#include <vector>

namespace mf {

template <class F>
using Row = std::vector<F>;

template <class F>
struct Echelon {
  std::vector<Row<F>> rows;         // reduced row-echelon, nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row

  std::size_t rank() const { return rows.size(); }

  /// Reduces v against the echelon rows in place; v is in the span iff it becomes zero.
  void reduce(Row<F>& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const F t = v[pivots[r]];
      if (t.is_zero()) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= t * rows[r][c];
    }
  }

  bool contains(Row<F> v) const {
    reduce(v);
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
};

/// Gauss-Jordan elimination to reduced row-echelon form.
template <class F>
Echelon<F> row_reduce(std::vector<Row<F>> rows) {
  Echelon<F> out;
  if (rows.empty()) return out;
  const std::size_t ncols = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < ncols && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    const F inv = rows[lead][col].inverse();
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead) continue;
      const F t = rows[r][col];
      if (t.is_zero()) continue;
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= t * rows[lead][c];
    }
    out.pivots.push_back(col);
    ++lead;
  }
  rows.resize(lead);
  out.rows = std::move(rows);
  return out;
}

template <class F>
std::size_t rank_of(std::vector<Row<F>> rows) {
  return row_reduce(std::move(rows)).rank();
}

/// Basis of {v : A v = 0} for A given as rows with `ncols` columns, returned in
/// reduced row-echelon form.
template <class F>
std::vector<Row<F>> kernel(const std::vector<Row<F>>& a, std::size_t ncols, const F& zero) {
  const F one = zero.ring().one();
  Echelon<F> e = row_reduce(a);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Row<F>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Row<F> v(ncols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return row_reduce(std::move(basis)).rows;
}

/// Product of a matrix (rows) with a column vector.
template <class F>
Row<F> apply(const std::vector<Row<F>>& a, const Row<F>& v, const F& zero) {
  Row<F> out(a.size(), zero);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!v[c].is_zero() && !a[r][c].is_zero()) out[r] += a[r][c] * v[c];
    }
  }
  return out;
}

}  // namespace mf
