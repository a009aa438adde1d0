#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/fixtures.hpp"
#include "wallcross/cohomology.hpp"

using namespace wallcross;

namespace {

IntersectionForm diag_form(int n, const VecQ& diag) {
  IntersectionForm form;
  form.dimension = n;
  form.h11_rank = static_cast<int>(diag.size());
  for (int k = 0; k < form.h11_rank; ++k)
    form.set_entry(std::vector<int>(n, k), diag[k]);
  return form;
}

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("evaluate on the rank-2 Lorentzian form") {
    const auto form = diag_form(2, {Rational(1), Rational(-1)});
    // Hand expansion: 1*2*1 + 1*1*(-1) = 1.
    CHECK(evaluate(form, {CohClass({Rational(1), Rational(1)}),
                          CohClass({Rational(2), Rational(1)})}) == Rational(1));
    CHECK(evaluate(form, {CohClass({Rational(1), Rational(1)}), CohClass::zero(2)}) ==
          Rational(0));
    // Symmetry of the two-argument form.
    CHECK(evaluate(form, {CohClass({Rational(2), Rational(1)}),
                          CohClass({Rational(1), Rational(1)})}) == Rational(1));
  }

  TEST_CASE("evaluate rejects mismatched classes") {
    const auto form = diag_form(2, {Rational(1), Rational(-1)});
    CHECK_THROWS_AS(evaluate(form, {CohClass({Rational(1)}),
                                    CohClass({Rational(1), Rational(0)})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate(form, {CohClass::zero(2)}), std::invalid_argument);
  }

  TEST_CASE("degree") {
    const auto form = diag_form(2, {Rational(1), Rational(-1)});
    CHECK(degree(form, CohClass({Rational(1), Rational(1)}),
                 CohClass({Rational(1), Rational(0)})) == Rational(1));
    CHECK(degree(form, CohClass::zero(2), CohClass({Rational(1), Rational(0)})) ==
          Rational(0));
    // deg (1,-1).(1, e) = 1 + e; at e = 1/2 this is 3/2.
    CHECK(degree(form, CohClass({Rational(1), Rational(-1)}),
                 CohClass({Rational(1), Rational(1, 2)})) == Rational(3, 2));
  }

  TEST_CASE("slope") {
    CHECK(slope(Rational(3), 3) == Rational(1));
    CHECK(slope(Rational(1), 2) == Rational(1, 2));
    CHECK(slope(Rational(-4), 2) == Rational(-2));
    CHECK_THROWS_AS(slope(Rational(1), 0), std::invalid_argument);
  }

  TEST_CASE("volume") {
    const auto form2 = diag_form(2, {Rational(1), Rational(-1)});
    CHECK(volume(form2, CohClass({Rational(2), Rational(1)})) == Rational(3));
    CHECK(volume(form2, CohClass::zero(2)) == Rational(0));
    const auto form3 = diag_form(2, {Rational(1), Rational(-1), Rational(-1)});
    CHECK(volume(form3, CohClass({Rational(1), Rational(0), Rational(0)})) ==
          Rational(1));
  }

  TEST_CASE("multilinearity on random data") {
    std::mt19937_64 rng(31001);
    const auto form = diag_form(2, {Rational(1), Rational(-1), Rational(2)});
    for (int trial = 0; trial < 50; ++trial) {
      const Rational a = testing::random_rational(rng), b = testing::random_rational(rng);
      const CohClass u(testing::random_eps(rng, 3)), v(testing::random_eps(rng, 3)),
          w(testing::random_eps(rng, 3));
      const CohClass combo = a * u + b * v;
      CHECK(evaluate(form, {combo, w}) ==
            a * evaluate(form, {u, w}) + b * evaluate(form, {v, w}));
    }
  }

  TEST_CASE("symmetry under all argument permutations") {
    std::mt19937_64 rng(31002);
    for (int n = 2; n <= 4; ++n) {
      IntersectionForm form;
      form.dimension = n;
      form.h11_rank = 2;
      // A dense random symmetric tensor on sorted multi-indices.
      std::vector<int> idx(n, 0);
      while (true) {
        if (std::is_sorted(idx.begin(), idx.end()))
          form.set_entry(idx, testing::random_rational(rng, 5));
        int slot = n - 1;
        while (slot >= 0 && idx[slot] == 1) idx[slot--] = 0;
        if (slot < 0) break;
        ++idx[slot];
      }
      std::vector<CohClass> args;
      for (int k = 0; k < n; ++k) args.push_back(CohClass(testing::random_eps(rng, 2, 5)));
      const Rational reference = evaluate(form, args);
      std::vector<int> perm(n);
      for (int k = 0; k < n; ++k) perm[k] = k;
      do {
        std::vector<CohClass> permuted;
        for (int k : perm) permuted.push_back(args[k]);
        CHECK(evaluate(form, permuted) == reference);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }

  TEST_CASE("degree homogeneity in the polarisation") {
    std::mt19937_64 rng(31003);
    for (int n = 2; n <= 4; ++n) {
      const auto form = diag_form(n, {Rational(1), Rational(-1)});
      for (int trial = 0; trial < 20; ++trial) {
        const CohClass c1(testing::random_eps(rng, 2, 5));
        const CohClass l(testing::random_eps(rng, 2, 5));
        Rational lambda = testing::random_rational(rng, 5);
        if (lambda == 0) lambda = 1;
        Rational pw = 1;
        for (int k = 0; k + 1 < n; ++k) pw *= lambda;
        CHECK(degree(form, c1, lambda * l) == pw * degree(form, c1, l));
      }
    }
  }
}
