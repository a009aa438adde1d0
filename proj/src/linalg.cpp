#include "wallcross/linalg.hpp"

namespace wallcross {

namespace {

// Reduced row echelon form in place. Pivots are searched in the first
// pivot_cols columns only; row operations touch the whole row, so trailing
// columns (for example an augmented right-hand side) are carried along.
std::vector<std::size_t> rref(MatQ& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::size_t width = m.empty() ? 0 : m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = Rational(1) / m[row][col];
    for (std::size_t c = col; c < width; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < width; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(MatQ m) {
  if (m.empty()) return 0;
  return rref(m, m[0].size()).size();
}

std::vector<VecQ> kernel_basis(const MatQ& rows, std::size_t ambient_dim) {
  MatQ m = rows;
  if (m.empty()) {
    std::vector<VecQ> basis;
    for (std::size_t k = 0; k < ambient_dim; ++k) {
      VecQ e = zero_vec(ambient_dim);
      e[k] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  const auto pivots = rref(m, ambient_dim);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (std::size_t free_col = 0; free_col < ambient_dim; ++free_col) {
    if (is_pivot[free_col]) continue;
    VecQ v = zero_vec(ambient_dim);
    v[free_col] = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = -m[pr][free_col];
    basis.push_back(v);
  }
  return basis;
}

std::optional<VecQ> solve_square(MatQ a, VecQ b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  const auto pivots = rref(a, n);
  if (pivots.size() != n) return std::nullopt;
  VecQ x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace wallcross
