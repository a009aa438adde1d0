#pragma once

#include <random>
#include <vector>

#include "wallcross/bundle.hpp"

namespace wallcross::testing {

// Two pieces over a rank-2 Lorentzian lattice: ranks (1,1),
// c1 = (1,1) and (1,-1), omega = (1,0), one extension edge.
inline GradedBundle two_piece_bundle() {
  GradedBundle gb;
  gb.form.dimension = 2;
  gb.form.h11_rank = 2;
  gb.form.set_entry({0, 0}, 1);
  gb.form.set_entry({1, 1}, -1);
  gb.omega = CohClass({Rational(1), Rational(0)});
  gb.pieces = {{1, CohClass({Rational(1), Rational(1)})},
               {1, CohClass({Rational(1), Rational(-1)})}};
  gb.edges = {{0, 1}};
  return gb;
}

// Three pieces in a chain over a rank-3 lattice with signature (1,-1,-1):
// c1 = (1,1,0), (1,-1,1), (1,0,-1), omega = (1,0,0), edges 1-2 and 2-3.
inline GradedBundle chain3_bundle() {
  GradedBundle gb;
  gb.form.dimension = 2;
  gb.form.h11_rank = 3;
  gb.form.set_entry({0, 0}, 1);
  gb.form.set_entry({1, 1}, -1);
  gb.form.set_entry({2, 2}, -1);
  gb.omega = CohClass({Rational(1), Rational(0), Rational(0)});
  gb.pieces = {{1, CohClass({Rational(1), Rational(1), Rational(0)})},
               {1, CohClass({Rational(1), Rational(-1), Rational(1)})},
               {1, CohClass({Rational(1), Rational(0), Rational(-1)})}};
  gb.edges = {{0, 1}, {1, 2}};
  return gb;
}

// Random connected upper-triangular quiver: a spanning tree plus extra edges.
inline std::vector<Edge> random_connected_quiver(std::mt19937_64& rng, int ell,
                                                 double extra_prob = 0.3) {
  std::vector<Edge> edges;
  for (int v = 1; v < ell; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) {
      const Edge e{i, j};
      if (std::find(edges.begin(), edges.end(), e) == edges.end() &&
          coin(rng) < extra_prob)
        edges.push_back(e);
    }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Random valid bundle over a Lorentzian lattice of rank ell: slopes at omega
// are equal by construction (leading c1 coordinate = rank), the remaining
// coordinates are small random integers.
inline GradedBundle random_bundle(std::mt19937_64& rng, int ell, bool rank_one) {
  GradedBundle gb;
  gb.form.dimension = 2;
  gb.form.h11_rank = ell;
  gb.form.set_entry({0, 0}, 1);
  for (int k = 1; k < ell; ++k) gb.form.set_entry({k, k}, -1);
  VecQ omega = zero_vec(ell);
  omega[0] = 1;
  gb.omega = CohClass(omega);
  std::uniform_int_distribution<int> rank_pick(1, 3);
  std::uniform_int_distribution<int> coord_pick(-3, 3);
  for (int i = 0; i < ell; ++i) {
    GradedPiece piece;
    piece.rank = rank_one ? 1 : rank_pick(rng);
    VecQ c1 = zero_vec(ell);
    c1[0] = piece.rank;  // slope 1 at omega for every piece
    for (int k = 1; k < ell; ++k) c1[k] = coord_pick(rng);
    piece.c1 = CohClass(c1);
    gb.pieces.push_back(std::move(piece));
  }
  gb.edges = random_connected_quiver(rng, ell);
  return gb;
}

// Random rational with numerator in [-bound, bound] and denominator 1..8.
inline Rational random_rational(std::mt19937_64& rng, int bound = 12) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 8);
  return Rational(num(rng), den(rng));
}

inline VecQ random_eps(std::mt19937_64& rng, int p, int bound = 12) {
  VecQ eps(p);
  for (auto& q : eps) q = random_rational(rng, bound);
  return eps;
}

}  // namespace wallcross::testing
