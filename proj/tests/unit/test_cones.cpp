#include <doctest.h>

#include <random>
#include <set>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "wallcross/cones.hpp"

using namespace wallcross;
using namespace wallcross::testing;

namespace {

std::vector<int> ones(int ell) { return std::vector<int>(ell, 1); }

std::set<VecQ> ray_set(const std::vector<VecQ>& rays) {
  return std::set<VecQ>(rays.begin(), rays.end());
}

}  // namespace

TEST_SUITE("cones") {
  TEST_CASE("weight vectors") {
    const Weight w = weight_of(3, {0, 2});
    CHECK(w.vector == VecQ{Rational(1), Rational(0), Rational(-1)});
    Rational sum = 0;
    for (const auto& q : w.vector) sum += q;
    CHECK(sum == 0);
  }

  TEST_CASE("weight cone of a single edge") {
    const auto cone = weight_cone(2, {{0, 1}}, ones(2));
    REQUIRE(cone.generators.size() == 1);
    CHECK(cone.generators[0] == VecQ{Rational(1), Rational(-1)});
    REQUIRE(cone.facet_normals.size() == 1);
    CHECK(cone.facet_normals[0] == VecQ{Rational(1), Rational(-1)});
  }

  TEST_CASE("full triangle drops the interior weight") {
    const auto cone = weight_cone(3, {{0, 1}, {0, 2}, {1, 2}}, ones(3));
    REQUIRE(cone.generators.size() == 2);
    CHECK(cone.generators[0] == VecQ{Rational(0), Rational(1), Rational(-1)});
    CHECK(cone.generators[1] == VecQ{Rational(1), Rational(-1), Rational(0)});
  }

  TEST_CASE("chain quiver keeps both weights") {
    const auto cone = weight_cone(3, {{0, 1}, {1, 2}}, ones(3));
    REQUIRE(cone.generators.size() == 2);
    CHECK(cone.generators[0] == VecQ{Rational(0), Rational(1), Rational(-1)});
    CHECK(cone.generators[1] == VecQ{Rational(1), Rational(-1), Rational(0)});
  }

  TEST_CASE("weight cone input validation") {
    CHECK_THROWS_AS(weight_cone(2, {}, ones(2)), std::invalid_argument);
    CHECK_THROWS_AS(weight_cone(3, {{0, 1}}, ones(3)), std::invalid_argument);
  }

  TEST_CASE("dual of the single-edge cone") {
    const auto sigma = weight_cone(2, {{0, 1}}, ones(2));
    const auto dual = dual_cone(sigma, ones(2));
    REQUIRE(dual.generators.size() == 1);
    CHECK(dual.generators[0] == VecQ{Rational(1), Rational(-1)});
  }

  TEST_CASE("dual of the full triangle") {
    const auto sigma = weight_cone(3, {{0, 1}, {0, 2}, {1, 2}}, ones(3));
    const auto dual = dual_cone(sigma, ones(3));
    REQUIRE(dual.generators.size() == 2);
    CHECK(ray_set(dual.generators) ==
          ray_set({{Rational(2), Rational(-1), Rational(-1)},
                   {Rational(1), Rational(1), Rational(-2)}}));
  }

  TEST_CASE("double description agrees with brute-force facet enumeration") {
    std::mt19937_64 rng(6301);
    for (int trial = 0; trial < 40; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 4);
      const auto edges = random_connected_quiver(rng, ell);
      std::vector<VecQ> halfspaces;
      for (const auto& e : edges) halfspaces.push_back(weight_of(ell, e).vector);
      const std::vector<VecQ> subspace{VecQ(ell, Rational(1))};
      CHECK(ray_set(extreme_rays(ell, halfspaces, subspace)) ==
            ray_set(brute_extreme_rays(ell, halfspaces, subspace)));
    }
  }

  TEST_CASE("double description on random halfspace systems") {
    std::mt19937_64 rng(6308);
    std::uniform_int_distribution<int> entry(-3, 3);
    int exercised = 0;
    for (int trial = 0; trial < 200 && exercised < 60; ++trial) {
      const int ambient = 3 + static_cast<int>(rng() % 2);
      VecQ functional(ambient);
      for (auto& q : functional) q = 1 + static_cast<int>(rng() % 3);
      std::vector<VecQ> halfspaces;
      const int count = 4 + static_cast<int>(rng() % 5);
      for (int k = 0; k < count; ++k) {
        VecQ h(ambient);
        for (auto& q : h) q = entry(rng);
        if (!is_zero_vec(h)) halfspaces.push_back(std::move(h));
      }
      std::vector<VecQ> rays;
      try {
        rays = extreme_rays(ambient, halfspaces, {functional});
      } catch (const std::invalid_argument&) {
        continue;  // cone with lineality; rejected by contract
      }
      ++exercised;
      CHECK(ray_set(rays) == ray_set(brute_extreme_rays(ambient, halfspaces,
                                                        {functional})));
    }
    CHECK(exercised >= 30);
  }

  TEST_CASE("duality is an involution") {
    std::mt19937_64 rng(6302);
    for (int trial = 0; trial < 100; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 5);
      const auto edges = random_connected_quiver(rng, ell);
      // Mixed ranks exercise the non-symmetric pairing as well.
      std::vector<int> ranks(ell, 1);
      if (trial % 2 == 0)
        for (auto& r : ranks) r = 1 + static_cast<int>(rng() % 3);
      const auto sigma = weight_cone(ell, edges, ranks);
      const auto dual = dual_cone(sigma, ranks);
      const auto back = dual_cone(dual, ones(ell));
      CHECK(ray_set(back.generators) == ray_set(sigma.generators));
    }
  }

  TEST_CASE("every dual ray is a two-value candidate with closed support") {
    std::mt19937_64 rng(6303);
    auto run = [&](int ell, const std::vector<Edge>& edges) {
      const auto ranks = ones(ell);
      const auto sigma = weight_cone(ell, edges, ranks);
      const auto dual = dual_cone(sigma, ranks);
      const auto candidates = candidate_dual_generators(ell, edges, ranks);
      for (const auto& ray : dual.generators) {
        const auto part = partition_form(ray, ranks);
        REQUIRE(part.has_value());
        // Closed support of the plus side.
        for (const auto& [i, j] : edges) {
          const bool j_in = std::binary_search(part->plus.begin(), part->plus.end(), j);
          const bool i_in = std::binary_search(part->plus.begin(), part->plus.end(), i);
          if (j_in) CHECK(i_in);
        }
        bool found = false;
        for (const auto& cand : candidates)
          found = found || cand.vector == part->canonical;
        CHECK(found);
      }
    };
    // Exhaustive over all connected quivers for ell <= 4.
    for (int ell = 2; ell <= 4; ++ell) {
      std::vector<Edge> all_pairs;
      for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) all_pairs.emplace_back(i, j);
      for (unsigned mask = 1; mask < (1u << all_pairs.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < all_pairs.size(); ++k)
          if ((mask >> k) & 1u) edges.push_back(all_pairs[k]);
        if (quiver_connected(ell, edges)) run(ell, edges);
      }
    }
    for (int trial = 0; trial < 30; ++trial) {
      const int ell = 5 + static_cast<int>(rng() % 3);
      run(ell, random_connected_quiver(rng, ell));
    }
  }

  TEST_CASE("partition form normalizes and rejects three values") {
    const auto p1 = partition_form({Rational(2), Rational(-1), Rational(-1)}, ones(3));
    REQUIRE(p1.has_value());
    CHECK(p1->plus == std::vector<int>{0});
    CHECK(p1->minus == std::vector<int>{1, 2});
    CHECK(p1->canonical ==
          VecQ{Rational(1), Rational(-1, 2), Rational(-1, 2)});

    CHECK(!partition_form({Rational(1), Rational(0), Rational(-1)}, ones(3)));

    const auto p2 = partition_form({Rational(1, 2), Rational(1, 2), Rational(-1)}, ones(3));
    REQUIRE(p2.has_value());
    CHECK(p2->plus == std::vector<int>{0, 1});
    CHECK(p2->minus == std::vector<int>{2});

    CHECK_THROWS_AS(partition_form(zero_vec(3), ones(3)), std::invalid_argument);
    CHECK_THROWS_AS(partition_form({Rational(1), Rational(1), Rational(1)}, ones(3)),
                    std::invalid_argument);
  }

  TEST_CASE("partition form with general ranks") {
    // ranks (2,1): trace-free means 2a1 + a2 = 0.
    const auto part = partition_form({Rational(1), Rational(-2)}, {2, 1});
    REQUIRE(part.has_value());
    CHECK(part->canonical == VecQ{Rational(1, 2), Rational(-1)});
  }

  TEST_CASE("candidates for the fixtures") {
    const auto chain = candidate_dual_generators(3, {{0, 1}, {1, 2}}, ones(3));
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].vector == VecQ{Rational(1), Rational(-1, 2), Rational(-1, 2)});
    CHECK(chain[1].vector == VecQ{Rational(1, 2), Rational(1, 2), Rational(-1)});

    const auto pair = candidate_dual_generators(2, {{0, 1}}, ones(2));
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].vector == VecQ{Rational(1), Rational(-1)});

    // Chain candidates are exactly the dual rays here.
    const auto sigma = weight_cone(3, {{0, 1}, {1, 2}}, ones(3));
    const auto dual = dual_cone(sigma, ones(3));
    std::set<VecQ> canonical;
    for (const auto& c : chain) canonical.insert(primitive(c.vector));
    CHECK(ray_set(dual.generators) == canonical);
  }

  TEST_CASE("interior membership against the facet description") {
    const auto sigma = weight_cone(3, {{0, 1}, {0, 2}, {1, 2}}, ones(3));
    CHECK(interior_membership(sigma, {Rational(2), Rational(0), Rational(-2)}) ==
          Membership::Interior);
    CHECK(interior_membership(sigma, {Rational(1), Rational(-1), Rational(0)}) ==
          Membership::Boundary);
    CHECK(interior_membership(sigma, {Rational(-1), Rational(1), Rational(0)}) ==
          Membership::Outside);
    CHECK_THROWS_AS(
        interior_membership(sigma, {Rational(1), Rational(1), Rational(1)}),
        std::invalid_argument);
  }

  TEST_CASE("membership agrees with the Farkas oracle") {
    std::mt19937_64 rng(6304);
    for (int trial = 0; trial < 60; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 4);
      const auto edges = random_connected_quiver(rng, ell);
      const auto sigma = weight_cone(ell, edges, ones(ell));
      // Random coordinate-sum-zero vector.
      VecQ v = zero_vec(ell);
      for (int i = 0; i + 1 < ell; ++i) {
        v[i] = v[i] + random_rational(rng, 4);
        v[ell - 1] = v[ell - 1] - v[i];
      }
      CHECK(interior_membership(sigma, v) == lp_membership(sigma.generators, v));
    }
  }

  TEST_CASE("strong convexity via the LP oracle") {
    std::mt19937_64 rng(6305);
    for (int trial = 0; trial < 40; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 5);
      const auto edges = random_connected_quiver(rng, ell);
      std::vector<VecQ> weights;
      for (const auto& e : edges) weights.push_back(weight_of(ell, e).vector);
      CHECK(cone_is_pointed(weights));
      // Adding an opposite ray destroys pointedness.
      weights.push_back(negate(weights.front()));
      CHECK(!cone_is_pointed(weights));
    }
  }

  TEST_CASE("generator extremality is certified by the LP test") {
    std::mt19937_64 rng(6306);
    auto check_extremal = [](const std::vector<VecQ>& gens) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<VecQ> others;
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (j != k) others.push_back(gens[j]);
        if (!others.empty()) CHECK(!ray_in_cone(others, gens[k]));
      }
    };
    for (int trial = 0; trial < 30; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 4);
      const auto edges = random_connected_quiver(rng, ell);
      const auto sigma = weight_cone(ell, edges, ones(ell));
      check_extremal(sigma.generators);
      check_extremal(dual_cone(sigma, ones(ell)).generators);
    }
  }

  TEST_CASE("the weight cone has full dimension in its subspace") {
    std::mt19937_64 rng(6307);
    for (int trial = 0; trial < 20; ++trial) {
      const int ell = 2 + static_cast<int>(rng() % 5);
      const auto edges = random_connected_quiver(rng, ell);
      const auto sigma = weight_cone(ell, edges, ones(ell));
      MatQ gens(sigma.generators.begin(), sigma.generators.end());
      CHECK(rank(gens) == static_cast<std::size_t>(ell - 1));
    }
  }
}
