#include "wallcross/chambers.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace wallcross {

const char* to_string(StabilityKind k) {
  switch (k) {
    case StabilityKind::Stable: return "stable";
    case StabilityKind::Unstable: return "unstable";
    case StabilityKind::StrictlySemistable: return "strictly_semistable";
  }
  return "?";
}

Rational nu_value(const GradedBundle& gb, const InvariantSubset& sub, const VecQ& eps) {
  const CohClass l = gb.kahler_class(eps);
  const Rational mu_total = slope(degree(gb.form, gb.total_c1(), l), gb.total_rank());
  return mu_total - subsheaf_slope(gb, sub, l);
}

namespace {

// deg_L(c) with L = omega + sum eps_k alpha_k, expanded as a polynomial in
// eps: iterate over compositions (k_0, .., k_p) of n-1 into the slots
// (omega, alpha_1, .., alpha_p) with multinomial coefficients.
std::map<std::vector<int>, Rational> degree_polynomial(const GradedBundle& gb,
                                                       const CohClass& c1) {
  const int n = gb.form.dimension;
  const int p = gb.form.h11_rank;
  std::map<std::vector<int>, Rational> poly;

  std::vector<int> comp(p + 1, 0);
  comp[0] = n - 1;
  while (true) {
    Rational multinomial = 1;
    {
      int used = 0;
      for (int s = 0; s <= p; ++s)
        for (int r = 1; r <= comp[s]; ++r) {
          ++used;
          multinomial = multinomial * used / r;
        }
    }
    std::vector<CohClass> args;
    args.reserve(n);
    args.push_back(c1);
    for (int r = 0; r < comp[0]; ++r) args.push_back(gb.omega);
    for (int k = 1; k <= p; ++k)
      for (int r = 0; r < comp[k]; ++r) args.push_back(gb.direction(k - 1));
    const Rational value = multinomial * evaluate(gb.form, args);
    if (value != 0) {
      std::vector<int> expo(comp.begin() + 1, comp.end());
      poly[std::move(expo)] += value;
    }

    // Successor composition of n-1 into p+1 parts: move one unit from the
    // first nonzero slot to its right, returning the rest to slot 0.
    int first = 0;
    while (first <= p && comp[first] == 0) ++first;
    if (first == p) break;  // everything sits in the last slot
    const int carry = comp[first] - 1;
    comp[first] = 0;
    comp[first + 1] += 1;
    comp[0] = carry;
  }
  return poly;
}

}  // namespace

SlopePolynomial nu_polynomial(const GradedBundle& gb, const InvariantSubset& sub) {
  SlopePolynomial out;
  out.subset = sub;
  const Rational inv_total(1, gb.total_rank());
  const Rational inv_sub(1, sub.rank);
  for (auto& [expo, coeff] : degree_polynomial(gb, gb.total_c1()))
    out.coefficients[expo] += inv_total * coeff;
  for (auto& [expo, coeff] : degree_polynomial(gb, sub.c1))
    out.coefficients[expo] -= inv_sub * coeff;
  for (auto it = out.coefficients.begin(); it != out.coefficients.end();)
    it = (it->second == 0) ? out.coefficients.erase(it) : std::next(it);
  return out;
}

Rational evaluate(const SlopePolynomial& poly, const VecQ& eps) {
  Rational total = 0;
  for (const auto& [expo, coeff] : poly.coefficients) {
    if (static_cast<int>(eps.size()) != static_cast<int>(expo.size()))
      throw std::invalid_argument("eps length does not match polynomial arity");
    Rational term = coeff;
    for (std::size_t k = 0; k < expo.size() && term != 0; ++k)
      for (int r = 0; r < expo[k]; ++r) term *= eps[k];
    total += term;
  }
  return total;
}

std::vector<std::pair<InvariantSubset, Rational>> nu_values(const GradedBundle& gb,
                                                            const VecQ& eps) {
  std::vector<std::pair<InvariantSubset, Rational>> out;
  for (auto& sub : invariant_subsets(gb)) {
    Rational nu = nu_value(gb, sub, eps);
    out.emplace_back(std::move(sub), std::move(nu));
  }
  return out;
}

ChamberLabel classify(const GradedBundle& gb, const VecQ& eps) {
  std::vector<InvariantSubset> negatives, zeros;
  for (auto& [sub, nu] : nu_values(gb, eps)) {
    if (nu < 0)
      negatives.push_back(std::move(sub));
    else if (nu == 0)
      zeros.push_back(std::move(sub));
  }
  ChamberLabel label;
  if (!negatives.empty()) {
    label.kind = StabilityKind::Unstable;
    label.witnesses = std::move(negatives);
  } else if (!zeros.empty()) {
    label.kind = StabilityKind::StrictlySemistable;
    label.witnesses = std::move(zeros);
  } else {
    label.kind = StabilityKind::Stable;
  }
  return label;
}

Rational min_nu(const GradedBundle& gb, const VecQ& eps) {
  Rational best = 0;
  bool first = true;
  for (const auto& [sub, nu] : nu_values(gb, eps)) {
    if (first || nu < best) best = nu;
    first = false;
  }
  return best;
}

Rational stable_ball_radius(const GradedBundle& gb, const VecQ& eps) {
  Rational linf = 0;
  for (const auto& q : eps) {
    const Rational a = abs(q);
    if (a > linf) linf = a;
  }
  const Rational box = linf + 1;  // coordinate bound valid for any rho <= 1

  Rational rho = 1;
  for (const auto& sub : invariant_subsets(gb)) {
    const SlopePolynomial poly = nu_polynomial(gb, sub);
    const Rational margin = evaluate(poly, eps);
    if (margin <= 0) return 0;
    // Lipschitz bound on the l1 ball of radius <= 1 around eps:
    // |nu(eps') - nu(eps)| <= sum_a |c_a| * |a| * box^(|a|-1) * |eps'-eps|_1.
    Rational lip = 0;
    for (const auto& [expo, coeff] : poly.coefficients) {
      int total_deg = 0;
      for (int e : expo) total_deg += e;
      if (total_deg == 0) continue;
      Rational pw = 1;
      for (int r = 0; r + 1 < total_deg; ++r) pw *= box;
      lip += abs(coeff) * total_deg * pw;
    }
    if (lip == 0) continue;  // constant positive deficit constrains nothing
    const Rational candidate = margin / (2 * lip);
    if (candidate < rho) rho = candidate;
  }
  return rho;
}

std::vector<GridSample> sample_ball(const GradedBundle& gb, const Rational& radius,
                                    const std::optional<Plane>& plane, int resolution,
                                    int threads) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const int p = gb.form.h11_rank;
  if (plane) {
    if (plane->axis_a < 0 || plane->axis_a >= p || plane->axis_b < 0 ||
        plane->axis_b >= p || plane->axis_a == plane->axis_b)
      throw std::invalid_argument("plane axes out of range");
  }

  VecQ values;
  for (int k = 0; k < resolution; ++k) {
    Rational v = -radius + Rational(2 * k) * radius / (resolution - 1);
    if (values.empty() || values.back() != v) values.push_back(std::move(v));
  }
  const int nv = static_cast<int>(values.size());

  const int axes = plane ? 2 : p;
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= nv;

  std::vector<GridSample> out(total);
  auto point_at = [&](std::size_t flat) {
    VecQ eps = zero_vec(p);
    std::size_t rest = flat;
    // Row-major: first axis varies slowest.
    for (int a = axes - 1; a >= 0; --a) {
      const int k = static_cast<int>(rest % nv);
      rest /= nv;
      const int axis = plane ? (a == 0 ? plane->axis_a : plane->axis_b) : a;
      eps[axis] = values[k];
    }
    return eps;
  };
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      GridSample s;
      s.eps = point_at(f);
      s.label = classify(gb, s.eps);
      s.min_nu = min_nu(gb, s.eps);
      out[f] = std::move(s);
    }
  };

  if (threads <= 1 || total < 2) {
    work(0, total);
  } else {
    const std::size_t nthreads = std::min<std::size_t>(threads, total);
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back(work, t * chunk, std::min(total, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_chamber_csv(std::ostream& os, const GradedBundle& gb,
                       const std::vector<GridSample>& samples) {
  const int p = gb.form.h11_rank;
  for (int k = 1; k <= p; ++k) os << "eps_" << k << ",";
  os << "label,min_nu,active_walls\n";
  for (const auto& s : samples) {
    for (const auto& q : s.eps) os << format_double(to_double(q)) << ",";
    os << to_string(s.label.kind) << "," << format_double(to_double(s.min_nu)) << ",";
    for (std::size_t w = 0; w < s.label.witnesses.size(); ++w) {
      if (w) os << "|";
      const auto& idx = s.label.witnesses[w].indices;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) os << "+";
        os << idx[i] + 1;
      }
    }
    os << "\n";
  }
}

}  // namespace wallcross
