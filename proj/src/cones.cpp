#include "wallcross/cones.hpp"

#include <algorithm>
#include <stdexcept>

#include "wallcross/linalg.hpp"
#include "wallcross/simplex.hpp"

namespace wallcross {

Weight weight_of(int ell, const Edge& e) {
  Weight w;
  w.vector = zero_vec(ell);
  w.vector[e.first] = 1;
  w.vector[e.second] = -1;
  w.edge = e;
  return w;
}

namespace {

VecQ to_vecq(const std::vector<int>& v) {
  VecQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

std::vector<VecQ> sorted_primitive_unique(std::vector<VecQ> rays) {
  for (auto& r : rays) r = primitive(r);
  std::sort(rays.begin(), rays.end(),
            [](const VecQ& a, const VecQ& b) { return compare_lex(a, b) < 0; });
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

}  // namespace

std::vector<VecQ> extreme_rays(int ambient_dim, const std::vector<VecQ>& halfspaces,
                               const std::vector<VecQ>& subspace) {
  const std::vector<VecQ> basis = kernel_basis(subspace, ambient_dim);
  const std::size_t d = basis.size();
  if (d == 0) return {};

  // Halfspaces restricted to subspace coordinates, primitive, lex insertion
  // order (duplicates collapse).
  std::vector<VecQ> hs;
  for (const auto& h : halfspaces) {
    VecQ hr(d);
    for (std::size_t t = 0; t < d; ++t) hr[t] = dot(h, basis[t]);
    if (!is_zero_vec(hr)) hs.push_back(primitive(hr));
  }
  hs = sorted_primitive_unique(std::move(hs));

  // Initial simplicial cone from the first d linearly independent halfspaces.
  std::vector<std::size_t> init;
  {
    MatQ chosen;
    for (std::size_t k = 0; k < hs.size() && init.size() < d; ++k) {
      chosen.push_back(hs[k]);
      if (rank(chosen) == chosen.size())
        init.push_back(k);
      else
        chosen.pop_back();
    }
    if (init.size() < d)
      throw std::invalid_argument(
          "cone contains a line (halfspace normals do not span the subspace)");
  }

  struct Ray {
    VecQ y;
    std::vector<bool> tight;  // aligned with processed halfspaces
  };

  std::vector<std::size_t> processed(init.begin(), init.end());
  std::vector<Ray> rays;
  {
    // Columns of the inverse of the initial halfspace matrix.
    MatQ h0(d, VecQ(d));
    for (std::size_t r = 0; r < d; ++r) h0[r] = hs[init[r]];
    for (std::size_t col = 0; col < d; ++col) {
      VecQ rhs = zero_vec(d);
      rhs[col] = 1;
      auto y = solve_square(h0, rhs);
      if (!y) throw std::logic_error("initial halfspace matrix must be invertible");
      Ray ray;
      ray.y = primitive(*y);
      ray.tight.resize(d);
      for (std::size_t r = 0; r < d; ++r) ray.tight[r] = (r != col);
      rays.push_back(std::move(ray));
    }
  }

  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (std::find(init.begin(), init.end(), k) != init.end()) continue;
    const VecQ& h = hs[k];
    std::vector<Rational> val(rays.size());
    bool any_negative = false;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(h, rays[r].y);
      any_negative = any_negative || val[r] < 0;
    }
    if (!any_negative) {
      for (std::size_t r = 0; r < rays.size(); ++r) rays[r].tight.push_back(val[r] == 0);
      processed.push_back(k);
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (val[r] >= 0) {
        Ray keep = rays[r];
        keep.tight.push_back(val[r] == 0);
        next.push_back(std::move(keep));
      }

    // Combine adjacent (+,-) pairs. Two rays are adjacent iff no third ray
    // is tight on every halfspace the pair is jointly tight on.
    for (std::size_t a = 0; a < rays.size(); ++a) {
      if (val[a] <= 0) continue;
      for (std::size_t b = 0; b < rays.size(); ++b) {
        if (val[b] >= 0) continue;
        std::vector<bool> common(processed.size());
        for (std::size_t t = 0; t < processed.size(); ++t)
          common[t] = rays[a].tight[t] && rays[b].tight[t];
        bool adjacent = true;
        for (std::size_t c = 0; c < rays.size() && adjacent; ++c) {
          if (c == a || c == b) continue;
          bool dominates = true;
          for (std::size_t t = 0; t < processed.size() && dominates; ++t)
            dominates = !common[t] || rays[c].tight[t];
          adjacent = !dominates;
        }
        if (!adjacent) continue;
        Ray fresh;
        fresh.y = primitive(sub(scale(val[a], rays[b].y), scale(val[b], rays[a].y)));
        fresh.tight.resize(processed.size() + 1);
        for (std::size_t t = 0; t < processed.size(); ++t)
          fresh.tight[t] = common[t];
        fresh.tight[processed.size()] = true;
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
    processed.push_back(k);
  }

  std::vector<VecQ> out;
  out.reserve(rays.size());
  for (const auto& ray : rays) {
    VecQ x = zero_vec(ambient_dim);
    for (std::size_t t = 0; t < d; ++t)
      if (ray.y[t] != 0) x = add(x, scale(ray.y[t], basis[t]));
    out.push_back(x);
  }
  return sorted_primitive_unique(std::move(out));
}

RationalCone weight_cone(int ell, const std::vector<Edge>& edges,
                         const std::vector<int>& ranks) {
  if (edges.empty()) throw std::invalid_argument("weight cone needs at least one edge");
  if (!quiver_connected(ell, edges))
    throw std::invalid_argument("weight cone needs a connected quiver");

  std::vector<VecQ> gens;
  for (const auto& e : edges) gens.push_back(weight_of(ell, e).vector);
  gens = sorted_primitive_unique(std::move(gens));

  // Drop non-extremal weights: a ray is redundant iff it is a nonnegative
  // combination of the others.
  for (std::size_t k = 0; k < gens.size();) {
    std::vector<VecQ> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != k) others.push_back(gens[j]);
    if (!others.empty() && ray_in_cone(others, gens[k]))
      gens.erase(gens.begin() + k);
    else
      ++k;
  }

  RationalCone cone;
  cone.ambient_dim = ell;
  cone.generators = std::move(gens);
  cone.subspace = {VecQ(ell, Rational(1))};
  cone.facet_normals = extreme_rays(ell, cone.generators, {to_vecq(ranks)});
  return cone;
}

RationalCone weight_cone(const GradedBundle& gb) {
  return weight_cone(gb.ell(), gb.edges, gb.ranks());
}

RationalCone dual_cone(const RationalCone& cone, const std::vector<int>& trace_weights) {
  RationalCone dual;
  dual.ambient_dim = cone.ambient_dim;
  dual.subspace = {to_vecq(trace_weights)};
  dual.generators = extreme_rays(cone.ambient_dim, cone.generators, dual.subspace);
  // Facets of the dual are cut out by the primal's extremal generators.
  dual.facet_normals = cone.generators;
  return dual;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

Membership interior_membership(const RationalCone& cone, const VecQ& v) {
  for (const auto& s : cone.subspace)
    if (dot(s, v) != 0)
      throw std::invalid_argument("vector violates the cone's subspace constraints");
  bool any_zero = false;
  for (const auto& f : cone.facet_normals) {
    const Rational val = dot(f, v);
    if (val < 0) return Membership::Outside;
    if (val == 0) any_zero = true;
  }
  return any_zero ? Membership::Boundary : Membership::Interior;
}

std::optional<TwoValuePartition> partition_form(const VecQ& v,
                                                const std::vector<int>& ranks) {
  if (v.size() != ranks.size())
    throw std::invalid_argument("vector and rank lengths differ");
  if (is_zero_vec(v)) throw std::invalid_argument("partition form needs v != 0");
  Rational trace = 0;
  for (std::size_t i = 0; i < v.size(); ++i) trace += v[i] * ranks[i];
  if (trace != 0)
    throw std::invalid_argument("partition form needs rank-weighted trace zero");

  Rational low = v[0], high = v[0];
  for (const auto& q : v) {
    if (q < low) low = q;
    if (q > high) high = q;
  }
  TwoValuePartition part;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == low)
      part.minus.push_back(static_cast<int>(i));
    else if (v[i] == high)
      part.plus.push_back(static_cast<int>(i));
    else
      return std::nullopt;  // a third value appears
  }
  int r_minus = 0, r_plus = 0;
  for (int i : part.minus) r_minus += ranks[i];
  for (int i : part.plus) r_plus += ranks[i];
  // Weighted trace zero with two distinct values forces low < 0 < high, and
  // scaling by 1/(high * r_plus) lands on the canonical form.
  part.canonical.resize(v.size());
  for (int i : part.minus) part.canonical[i] = Rational(-1, r_minus);
  for (int i : part.plus) part.canonical[i] = Rational(1, r_plus);
  return part;
}

std::vector<DualGenerator> candidate_dual_generators(int ell,
                                                     const std::vector<Edge>& edges,
                                                     const std::vector<int>& ranks) {
  std::vector<DualGenerator> out;
  for (const auto& subset : closed_subsets(ell, edges)) {
    DualGenerator gen;
    gen.plus = subset;
    for (int i = 0; i < ell; ++i)
      if (!std::binary_search(subset.begin(), subset.end(), i)) gen.minus.push_back(i);
    int r_plus = 0, r_minus = 0;
    for (int i : gen.plus) r_plus += ranks[i];
    for (int i : gen.minus) r_minus += ranks[i];
    gen.vector = zero_vec(ell);
    for (int i : gen.plus) gen.vector[i] = Rational(1, r_plus);
    for (int i : gen.minus) gen.vector[i] = Rational(-1, r_minus);
    out.push_back(std::move(gen));
  }
  return out;
}

std::vector<DualGenerator> candidate_dual_generators(const GradedBundle& gb) {
  return candidate_dual_generators(gb.ell(), gb.edges, gb.ranks());
}

bool ray_in_cone(const std::vector<VecQ>& generators, const VecQ& v) {
  if (generators.empty()) return is_zero_vec(v);
  const std::size_t n = v.size();
  MatQ a(n, VecQ(generators.size()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < generators.size(); ++c) a[r][c] = generators[c][r];
  return lp::feasible(a, v);
}

bool cone_is_pointed(const std::vector<VecQ>& generators) {
  if (generators.empty()) return true;
  const std::size_t n = generators[0].size();
  // Pointed iff no convex combination of generators vanishes.
  MatQ a(n + 1, VecQ(generators.size()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < generators.size(); ++c) a[r][c] = generators[c][r];
  for (std::size_t c = 0; c < generators.size(); ++c) a[n][c] = 1;
  VecQ b = zero_vec(n + 1);
  b[n] = 1;
  return !lp::feasible(a, b);
}

Membership lp_membership(const std::vector<VecQ>& generators, const VecQ& v) {
  // maximize delta subject to  sum_e u_e g_e + delta * (sum_e g_e) = v,
  // u, delta >= 0; substituting u = t - delta recovers t_e >= delta.
  const std::size_t n = v.size();
  const std::size_t k = generators.size();
  MatQ a(n, VecQ(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < k; ++c) {
      a[r][c] = generators[c][r];
      s += generators[c][r];
    }
    a[r][k] = s;
  }
  VecQ c = zero_vec(k + 1);
  c[k] = 1;
  const auto sol = lp::maximize(a, v, c);
  if (sol.status == lp::Status::Infeasible) return Membership::Outside;
  if (sol.status == lp::Status::Unbounded) return Membership::Interior;
  return sol.objective > 0 ? Membership::Interior : Membership::Boundary;
}

}  // namespace wallcross
