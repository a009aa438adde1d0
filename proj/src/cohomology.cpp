#include "wallcross/cohomology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wallcross {

CohClass CohClass::basis_vector(std::size_t p, std::size_t k) {
  CohClass e = zero(p);
  e.c[k] = 1;
  return e;
}

void IntersectionForm::set_entry(std::vector<int> idx, const Rational& value) {
  if (static_cast<int>(idx.size()) != dimension)
    throw std::invalid_argument("intersection index has " +
                                std::to_string(idx.size()) + " entries, expected " +
                                std::to_string(dimension));
  for (int i : idx)
    if (i < 0 || i >= h11_rank)
      throw std::invalid_argument("intersection index out of range");
  std::sort(idx.begin(), idx.end());
  entries[std::move(idx)] = value;
}

Rational IntersectionForm::entry(std::vector<int> idx) const {
  std::sort(idx.begin(), idx.end());
  const auto it = entries.find(idx);
  return it == entries.end() ? Rational(0) : it->second;
}

Rational evaluate(const IntersectionForm& form, const std::vector<CohClass>& classes) {
  const int n = form.dimension;
  const int p = form.h11_rank;
  if (static_cast<int>(classes.size()) != n)
    throw std::invalid_argument("evaluate expects exactly " + std::to_string(n) +
                                " classes");
  for (const auto& cls : classes)
    if (static_cast<int>(cls.size()) != p)
      throw std::invalid_argument("cohomology class has " +
                                  std::to_string(cls.size()) +
                                  " coordinates, form has h11 rank " +
                                  std::to_string(p));

  // Odometer over all index tuples; p^n is tiny in every intended use.
  Rational total = 0;
  std::vector<int> idx(n, 0);
  while (true) {
    Rational coeff = 1;
    for (int slot = 0; slot < n && coeff != 0; ++slot)
      coeff *= classes[slot].c[idx[slot]];
    if (coeff != 0) total += coeff * form.entry(idx);
    int slot = n - 1;
    while (slot >= 0 && idx[slot] == p - 1) idx[slot--] = 0;
    if (slot < 0) break;
    ++idx[slot];
  }
  return total;
}

Rational degree(const IntersectionForm& form, const CohClass& c1, const CohClass& l) {
  std::vector<CohClass> args;
  args.reserve(form.dimension);
  args.push_back(c1);
  for (int k = 1; k < form.dimension; ++k) args.push_back(l);
  return evaluate(form, args);
}

Rational slope(const Rational& deg, int rank) {
  if (rank < 1) throw std::invalid_argument("slope needs positive rank");
  return deg / rank;
}

Rational volume(const IntersectionForm& form, const CohClass& l) {
  return evaluate(form, std::vector<CohClass>(form.dimension, l));
}

}  // namespace wallcross
