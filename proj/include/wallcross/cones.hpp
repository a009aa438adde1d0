#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wallcross/bundle.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

// Torus weight of the extension component carried by an edge: +1 at i, -1 at
// j, zero elsewhere.
struct Weight {
  VecQ vector;
  Edge edge;
};

Weight weight_of(int ell, const Edge& e);

// Strongly convex rational polyhedral cone, full-dimensional inside the
// subspace cut out by its equality functionals. Generators are primitive
// integer extremal rays; facet normals are inward, also primitive integer,
// and together with the subspace equations they cut out the cone exactly.
struct RationalCone {
  int ambient_dim = 0;
  std::vector<VecQ> generators;
  std::vector<VecQ> facet_normals;
  std::vector<VecQ> subspace;  // functionals that vanish on the cone
};

// Cone spanned by the quiver weights, inside { sum_i x_i = 0 }. Non-extremal
// weights are removed (LP test per ray); facet normals live in the
// rank-weighted trace-free subspace. Throws on an empty edge set or a
// disconnected quiver.
RationalCone weight_cone(int ell, const std::vector<Edge>& edges,
                         const std::vector<int>& ranks);
RationalCone weight_cone(const GradedBundle& gb);

// Dual cone { v : <g, v> >= 0 for all generators g }, inside
// { sum_i trace_weights_i v_i = 0 }, computed by double description with
// lexicographic halfspace insertion. Output rays are primitive, deduplicated
// and lexicographically sorted.
RationalCone dual_cone(const RationalCone& cone, const std::vector<int>& trace_weights);

enum class Membership { Interior, Boundary, Outside };

const char* to_string(Membership m);

// Relative position of v with respect to the cone: Interior iff every facet
// functional is strictly positive, Boundary iff all are nonnegative with at
// least one zero. Throws when v violates the subspace constraints.
Membership interior_membership(const RationalCone& cone, const VecQ& v);

struct TwoValuePartition {
  std::vector<int> minus;  // indices carrying the negative value
  std::vector<int> plus;   // indices carrying the positive value
  VecQ canonical;          // -1/r(minus) on minus, +1/r(plus) on plus
};

// Detects the two-value normal form of a rank-weighted trace-free vector:
// nullopt unless v takes exactly two distinct values. Throws when the
// preconditions (v != 0, weighted trace zero) fail.
std::optional<TwoValuePartition> partition_form(const VecQ& v,
                                                const std::vector<int>& ranks);

struct DualGenerator {
  VecQ vector;  // canonical two-value form
  std::vector<int> minus;
  std::vector<int> plus;
};

// One candidate per closed proper subset I: +1/r(I) on I, -1/r(complement)
// outside. Every extremal ray of the dual cone appears in this list.
std::vector<DualGenerator> candidate_dual_generators(const GradedBundle& gb);
std::vector<DualGenerator> candidate_dual_generators(int ell,
                                                     const std::vector<Edge>& edges,
                                                     const std::vector<int>& ranks);

// LP-backed predicates (also used as cross-check oracles in tests).
bool ray_in_cone(const std::vector<VecQ>& generators, const VecQ& v);
bool cone_is_pointed(const std::vector<VecQ>& generators);
// Membership decided by a Farkas-style LP instead of facet normals.
Membership lp_membership(const std::vector<VecQ>& generators, const VecQ& v);

// Extreme rays of { x : <s,x> = 0, <h,x> >= 0 } by double description.
// Requires the result to be pointed and full-dimensional in the subspace.
std::vector<VecQ> extreme_rays(int ambient_dim, const std::vector<VecQ>& halfspaces,
                               const std::vector<VecQ>& subspace);

}  // namespace wallcross
