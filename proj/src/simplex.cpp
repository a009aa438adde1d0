#include "wallcross/simplex.hpp"

#include <limits>
#include <stdexcept>

namespace wallcross::lp {

namespace {

// Dense tableau: rows 0..m-1 are constraints with rhs in the last column,
// row m is the reduced-cost row (objective to be minimized, -value in rhs).
struct Tableau {
  std::size_t m, n;      // constraints, structural+artificial columns
  MatQ t;                // (m+1) x (n+1)
  std::vector<std::size_t> basis;  // basic column per row

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational inv = Rational(1) / t[pr][pc];
    for (auto& v : t[pr]) v *= inv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      const Rational f = t[r][pc];
      for (std::size_t c = 0; c <= n; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Bland: entering = lowest-index column with negative reduced cost,
  // leaving = min ratio, ties by lowest basic column index.
  // Returns false when optimal; throws Unbounded via status out-param.
  bool step(bool& unbounded) {
    std::size_t pc = n;
    for (std::size_t c = 0; c < n; ++c)
      if (t[m][c] < 0) {
        pc = c;
        break;
      }
    if (pc == n) return false;
    std::size_t pr = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][pc] <= 0) continue;
      const Rational ratio = t[r][n] / t[r][pc];
      if (pr == m || ratio < best ||
          (ratio == best && basis[r] < basis[pr])) {
        pr = r;
        best = ratio;
      }
    }
    if (pr == m) {
      unbounded = true;
      return false;
    }
    pivot(pr, pc);
    unbounded = false;
    return true;
  }
};

}  // namespace

Solution maximize(const MatQ& a, const VecQ& b, const VecQ& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();

  Tableau tb;
  tb.m = m;
  tb.n = n + m;  // structural + one artificial per row
  tb.t.assign(m + 1, zero_vec(tb.n + 1));
  tb.basis.resize(m);

  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    for (std::size_t cidx = 0; cidx < n; ++cidx)
      tb.t[r][cidx] = flip ? -a[r][cidx] : a[r][cidx];
    tb.t[r][n + r] = 1;
    tb.t[r][tb.n] = flip ? -b[r] : b[r];
    tb.basis[r] = n + r;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t cidx = 0; cidx <= tb.n; ++cidx)
      tb.t[m][cidx] -= tb.t[r][cidx];
  for (std::size_t r = 0; r < m; ++r) tb.t[m][n + r] = 0;

  bool unbounded = false;
  while (tb.step(unbounded)) {
  }
  if (unbounded)
    throw std::logic_error("phase-1 simplex cannot be unbounded");
  if (tb.t[m][tb.n] != 0) return {Status::Infeasible, 0, {}};

  // Drive remaining artificials out of the basis; a row with no structural
  // pivot available is redundant and stays put with value zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] < n) continue;
    for (std::size_t cidx = 0; cidx < n; ++cidx) {
      if (tb.t[r][cidx] != 0) {
        tb.pivot(r, cidx);
        break;
      }
    }
  }

  // Phase 2: minimize -c.x over the feasible basis found above.
  for (std::size_t cidx = 0; cidx <= tb.n; ++cidx) tb.t[m][cidx] = 0;
  for (std::size_t cidx = 0; cidx < n; ++cidx) tb.t[m][cidx] = -c[cidx];
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] >= n || tb.t[m][tb.basis[r]] == 0) continue;
    const Rational f = tb.t[m][tb.basis[r]];
    for (std::size_t cidx = 0; cidx <= tb.n; ++cidx)
      tb.t[m][cidx] -= f * tb.t[r][cidx];
  }
  // Artificial columns must never re-enter.
  for (std::size_t r = 0; r < m; ++r) tb.t[m][n + r] = 1;

  while (tb.step(unbounded)) {
  }
  if (unbounded) return {Status::Unbounded, 0, {}};

  VecQ x = zero_vec(n);
  for (std::size_t r = 0; r < m; ++r)
    if (tb.basis[r] < n) x[tb.basis[r]] = tb.t[r][tb.n];
  return {Status::Optimal, tb.t[m][tb.n], x};
}

bool feasible(const MatQ& a, const VecQ& b) {
  if (a.empty()) return true;
  return maximize(a, b, zero_vec(a[0].size())).status == Status::Optimal;
}

}  // namespace wallcross::lp
