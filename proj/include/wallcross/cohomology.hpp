#pragma once

#include <map>
#include <vector>

#include "wallcross/rational.hpp"

namespace wallcross {

// A (1,1)-class in coordinates over a fixed basis of H^{1,1}.
// The operators are hidden friends: they only take part in overload
// resolution when a CohClass argument is present.
struct CohClass {
  VecQ c;

  CohClass() = default;
  explicit CohClass(VecQ coords) : c(std::move(coords)) {}
  std::size_t size() const { return c.size(); }

  static CohClass zero(std::size_t p) { return CohClass(zero_vec(p)); }
  static CohClass basis_vector(std::size_t p, std::size_t k);

  friend CohClass operator+(const CohClass& a, const CohClass& b) {
    return CohClass(add(a.c, b.c));
  }
  friend CohClass operator*(const Rational& s, const CohClass& a) {
    return CohClass(scale(s, a.c));
  }
  friend bool operator==(const CohClass& a, const CohClass& b) { return a.c == b.c; }
};

// Symmetric n-linear intersection tensor on a rank-p lattice. Entries are
// stored on sorted multi-indices only; anything absent evaluates to zero.
struct IntersectionForm {
  int dimension = 0;  // complex dimension n
  int h11_rank = 0;   // p
  std::map<std::vector<int>, Rational> entries;

  // Sorts idx; throws on wrong length or out-of-range indices.
  void set_entry(std::vector<int> idx, const Rational& value);
  Rational entry(std::vector<int> idx) const;
};

// Full multilinear expansion; requires exactly n classes of length p.
Rational evaluate(const IntersectionForm& form, const std::vector<CohClass>& classes);

// deg_L(c1) = c1 . L^{n-1}
Rational degree(const IntersectionForm& form, const CohClass& c1, const CohClass& l);

// deg / rank, exact.
Rational slope(const Rational& deg, int rank);

// L^n
Rational volume(const IntersectionForm& form, const CohClass& l);

}  // namespace wallcross
