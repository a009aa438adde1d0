#include "wallcross/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wallcross {

std::vector<int> GradedBundle::ranks() const {
  std::vector<int> r(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) r[i] = pieces[i].rank;
  return r;
}

int GradedBundle::total_rank() const {
  int r = 0;
  for (const auto& piece : pieces) r += piece.rank;
  return r;
}

CohClass GradedBundle::total_c1() const {
  CohClass c = CohClass::zero(form.h11_rank);
  for (const auto& piece : pieces) c = c + piece.c1;
  return c;
}

CohClass GradedBundle::direction(int k) const {
  if (!pert_basis.empty()) return pert_basis[k];
  return CohClass::basis_vector(form.h11_rank, k);
}

CohClass GradedBundle::kahler_class(const VecQ& eps) const {
  if (static_cast<int>(eps.size()) != form.h11_rank)
    throw std::invalid_argument("eps has length " + std::to_string(eps.size()) +
                                ", expected " + std::to_string(form.h11_rank));
  CohClass l = omega;
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (eps[k] != 0) l = l + eps[k] * direction(static_cast<int>(k));
  return l;
}

bool quiver_connected(int ell, const std::vector<Edge>& edges) {
  if (ell <= 1) return true;
  std::vector<int> parent(ell);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [i, j] : edges)
    if (i >= 0 && j >= 0 && i < ell && j < ell) parent[find(i)] = find(j);
  for (int v = 1; v < ell; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

std::vector<Violation> validate(const GradedBundle& gb) {
  std::vector<Violation> out;
  const int p = gb.form.h11_rank;
  const int ell = gb.ell();

  if (gb.form.dimension < 1 || p < 1)
    out.push_back({"form shape", "dimension and h11 rank must be positive"});
  if (ell < 1) out.push_back({"pieces", "at least one graded piece required"});
  if (static_cast<int>(gb.omega.size()) != p)
    out.push_back({"coordinate length", "omega has " + std::to_string(gb.omega.size()) +
                                            " coordinates, expected " + std::to_string(p)});
  for (int i = 0; i < ell; ++i) {
    if (gb.pieces[i].rank < 1)
      out.push_back({"positive rank",
                     "piece " + std::to_string(i + 1) + " has rank " +
                         std::to_string(gb.pieces[i].rank)});
    if (static_cast<int>(gb.pieces[i].c1.size()) != p)
      out.push_back({"coordinate length",
                     "c1 of piece " + std::to_string(i + 1) + " has " +
                         std::to_string(gb.pieces[i].c1.size()) + " coordinates"});
  }
  if (!gb.pert_basis.empty()) {
    if (static_cast<int>(gb.pert_basis.size()) != p)
      out.push_back({"perturbation basis", "expected " + std::to_string(p) +
                                               " directions, found " +
                                               std::to_string(gb.pert_basis.size())});
    for (const auto& a : gb.pert_basis)
      if (static_cast<int>(a.size()) != p)
        out.push_back({"perturbation basis", "direction with wrong coordinate length"});
  }

  std::set<Edge> seen;
  for (const auto& e : gb.edges) {
    if (e.first < 0 || e.second >= ell || e.first >= e.second) {
      out.push_back({"upper-triangular edges",
                     "edge (" + std::to_string(e.first + 1) + "," +
                         std::to_string(e.second + 1) + ") must satisfy i < j"});
      continue;
    }
    if (!seen.insert(e).second)
      out.push_back({"duplicate edge", "edge (" + std::to_string(e.first + 1) + "," +
                                           std::to_string(e.second + 1) + ") repeated"});
  }

  // Stop here if the shape is broken; the checks below assume it.
  if (!out.empty()) return out;

  Rational mu0;
  bool have_mu0 = false;
  int base_idx = 0;
  for (int i = 0; i < ell; ++i) {
    const Rational deg = degree(gb.form, gb.pieces[i].c1, gb.omega);
    const Rational mu = slope(deg, gb.pieces[i].rank);
    if (!have_mu0) {
      mu0 = mu;
      have_mu0 = true;
      base_idx = i;
    } else if (mu != mu0) {
      std::ostringstream os;
      os << "pieces " << base_idx + 1 << " and " << i + 1
         << " have unequal slopes at omega: degrees "
         << degree(gb.form, gb.pieces[base_idx].c1, gb.omega).str() << " vs "
         << deg.str() << ", slopes " << mu0.str() << " vs " << mu.str();
      out.push_back({"unequal slopes", os.str()});
    }
  }

  if (!quiver_connected(ell, gb.edges))
    out.push_back({"quiver disconnected",
                   "the undirected extension quiver must be connected"});

  return out;
}

InvariantSubset make_subset(const GradedBundle& gb, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty()) throw std::invalid_argument("subset must be nonempty");
  if (static_cast<int>(indices.size()) >= gb.ell())
    throw std::invalid_argument("subset must be proper");
  InvariantSubset sub;
  sub.c1 = CohClass::zero(gb.form.h11_rank);
  for (int i : indices) {
    if (i < 0 || i >= gb.ell()) throw std::invalid_argument("subset index out of range");
    sub.rank += gb.pieces[i].rank;
    sub.c1 = sub.c1 + gb.pieces[i].c1;
  }
  sub.indices = std::move(indices);
  return sub;
}

std::vector<std::vector<int>> closed_subsets(int ell, const std::vector<Edge>& edges) {
  if (ell < 1 || ell > 24)
    throw std::invalid_argument("closed subset enumeration supports 1 <= ell <= 24");
  std::vector<std::uint32_t> preds(ell, 0);
  for (const auto& [i, j] : edges) preds[j] |= (1u << i);

  std::vector<std::uint32_t> masks;
  const std::uint32_t full = (1u << ell) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    bool closed = true;
    for (int j = 0; j < ell && closed; ++j)
      if ((mask >> j) & 1u) closed = (preds[j] & ~mask) == 0;
    if (closed) masks.push_back(mask);
  }

  std::vector<std::vector<int>> out;
  out.reserve(masks.size());
  for (auto mask : masks) {
    std::vector<int> idx;
    for (int i = 0; i < ell; ++i)
      if ((mask >> i) & 1u) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<InvariantSubset> invariant_subsets(const GradedBundle& gb) {
  std::vector<InvariantSubset> out;
  for (auto& idx : closed_subsets(gb.ell(), gb.edges))
    out.push_back(make_subset(gb, std::move(idx)));
  std::sort(out.begin(), out.end(), [](const InvariantSubset& a, const InvariantSubset& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.indices < b.indices;
  });
  return out;
}

Rational subsheaf_slope(const GradedBundle& gb, const InvariantSubset& sub,
                        const CohClass& l) {
  return slope(degree(gb.form, sub.c1, l), sub.rank);
}

std::string subset_to_string(const std::vector<int>& indices) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) os << ",";
    os << indices[k] + 1;
  }
  os << "}";
  return os.str();
}

}  // namespace wallcross
