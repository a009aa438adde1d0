#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wallcross/cones.hpp"
#include "wallcross/linalg.hpp"

namespace wallcross::testing {

// Direct filtration of all 2^ell - 2 proper nonempty subsets, written
// independently of the production enumeration.
inline std::vector<std::vector<int>> brute_closed_subsets(
    int ell, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1u << ell); ++mask) {
    bool closed = true;
    for (const auto& [i, j] : edges)
      if (((mask >> j) & 1u) && !((mask >> i) & 1u)) closed = false;
    if (!closed) continue;
    std::vector<int> idx;
    for (int v = 0; v < ell; ++v)
      if ((mask >> v) & 1u) idx.push_back(v);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Extreme rays of { x : <s,x> = 0, <h,x> >= 0 } by brute-force facet
// intersection: every (d-1)-subset of halfspaces whose common kernel inside
// the subspace is one-dimensional yields a candidate line; keep directions
// satisfying all inequalities, then keep the extremal ones (LP test).
inline std::vector<VecQ> brute_extreme_rays(int ambient,
                                            const std::vector<VecQ>& halfspaces,
                                            const std::vector<VecQ>& subspace) {
  const auto basis = kernel_basis(subspace, ambient);
  const std::size_t d = basis.size();
  std::vector<VecQ> candidates;

  auto consider = [&](unsigned mask) {
    MatQ rows = subspace;
    for (std::size_t k = 0; k < halfspaces.size(); ++k)
      if ((mask >> k) & 1u) rows.push_back(halfspaces[k]);
    const auto null_dirs = kernel_basis(rows, ambient);
    if (null_dirs.size() != 1) return;
    for (const VecQ& dir : {null_dirs[0], negate(null_dirs[0])}) {
      bool inside = true;
      for (const auto& h : halfspaces)
        if (dot(h, dir) < 0) inside = false;
      if (inside) candidates.push_back(primitive(dir));
    }
  };
  for (unsigned mask = 0; mask < (1u << halfspaces.size()); ++mask)
    if (static_cast<std::size_t>(__builtin_popcount(mask)) + 1 == d) consider(mask);

  std::sort(candidates.begin(), candidates.end(),
            [](const VecQ& a, const VecQ& b) { return compare_lex(a, b) < 0; });
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Drop candidates expressible by the others.
  std::vector<VecQ> rays;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    std::vector<VecQ> others;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (j != k) others.push_back(candidates[j]);
    if (others.empty() || !ray_in_cone(others, candidates[k]))
      rays.push_back(candidates[k]);
  }
  return rays;
}

struct LogLogFit {
  double slope = 0;
  double intercept = 0;  // log of the constant
};

inline LogLogFit fit_log_log(const std::vector<double>& t,
                             const std::vector<double>& y) {
  const std::size_t n = t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(t[k]);
    const double yy = std::log(y[k]);
    sx += x;
    sy += yy;
    sxx += x * x;
    sxy += x * yy;
  }
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace wallcross::testing
