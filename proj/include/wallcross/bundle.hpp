#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wallcross/cohomology.hpp"

namespace wallcross {

// Quiver edge (i, j), 0-based, i < j: the extension component from piece j
// into piece i is nonzero.
using Edge = std::pair<int, int>;

struct GradedPiece {
  int rank = 0;
  CohClass c1;
};

// The graded object of a semi-stable bundle: stable pieces with their first
// Chern classes, the support of the extension classes as an upper-triangular
// quiver, the base polarisation, and the perturbation directions.
struct GradedBundle {
  IntersectionForm form;
  CohClass omega;
  std::vector<GradedPiece> pieces;
  std::vector<Edge> edges;
  // Perturbation directions alpha_k; empty means the standard basis.
  std::vector<CohClass> pert_basis;

  int ell() const { return static_cast<int>(pieces.size()); }
  std::vector<int> ranks() const;
  int total_rank() const;
  CohClass total_c1() const;
  CohClass direction(int k) const;
  // omega + sum_k eps_k * alpha_k; eps must have length h11_rank.
  CohClass kahler_class(const VecQ& eps) const;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

// Empty iff the bundle satisfies every structural invariant: positive ranks,
// consistent coordinate lengths, upper-triangular unique edges, equal slopes
// at omega, connected quiver.
std::vector<Violation> validate(const GradedBundle& gb);

// A subbundle of the graded object spanned by a closed set of pieces:
// for every edge (i, j), j in I forces i in I.
struct InvariantSubset {
  std::vector<int> indices;  // sorted, nonempty, proper
  int rank = 0;
  CohClass c1;
};

// Aggregates rank and c1; throws if indices are empty, improper, or out of
// range. Does not check closure (callers enumerate closed sets).
InvariantSubset make_subset(const GradedBundle& gb, std::vector<int> indices);

// All nonempty proper closed subsets of {0..ell-1}, sorted by size then
// lexicographically.
std::vector<std::vector<int>> closed_subsets(int ell, const std::vector<Edge>& edges);

// Closed subsets with aggregated rank and c1, sorted by rank then
// lexicographically on the index lists.
std::vector<InvariantSubset> invariant_subsets(const GradedBundle& gb);

Rational subsheaf_slope(const GradedBundle& gb, const InvariantSubset& sub,
                        const CohClass& l);

bool quiver_connected(int ell, const std::vector<Edge>& edges);

std::string subset_to_string(const std::vector<int>& indices);  // 1-based "{1,2}"

}  // namespace wallcross
