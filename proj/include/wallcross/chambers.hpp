#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wallcross/bundle.hpp"

namespace wallcross {

enum class StabilityKind { Stable, Unstable, StrictlySemistable };

const char* to_string(StabilityKind k);

// Classification of a perturbed polarisation. Witnesses are the subsets with
// negative slope deficit (Unstable) or vanishing deficit (StrictlySemistable);
// a Stable label carries none.
struct ChamberLabel {
  StabilityKind kind = StabilityKind::Stable;
  std::vector<InvariantSubset> witnesses;
};

// Multivariate expansion of eps -> mu_eps(E) - mu_eps(F_I), exact, of total
// degree at most n-1 and vanishing constant term.
struct SlopePolynomial {
  InvariantSubset subset;
  std::map<std::vector<int>, Rational> coefficients;  // exponent vector -> coeff
};

// Slope deficit of the subset at omega + sum eps_k alpha_k, computed directly
// from degrees.
Rational nu_value(const GradedBundle& gb, const InvariantSubset& sub, const VecQ& eps);

SlopePolynomial nu_polynomial(const GradedBundle& gb, const InvariantSubset& sub);

Rational evaluate(const SlopePolynomial& poly, const VecQ& eps);

// Deficits of all closed proper subsets at eps, in invariant_subsets order.
std::vector<std::pair<InvariantSubset, Rational>> nu_values(const GradedBundle& gb,
                                                            const VecQ& eps);

ChamberLabel classify(const GradedBundle& gb, const VecQ& eps);

// Minimum deficit over all closed proper subsets (0 when there are none).
Rational min_nu(const GradedBundle& gb, const VecQ& eps);

// Exact openness certificate: a rho > 0 such that every eps' with
// |eps' - eps|_1 <= rho still classifies Stable, derived from a coefficient
// bound on each deficit polynomial. Returns 0 when eps is not Stable.
Rational stable_ball_radius(const GradedBundle& gb, const VecQ& eps);

struct Plane {
  int axis_a = 0;  // 0-based
  int axis_b = 1;
};

struct GridSample {
  VecQ eps;
  ChamberLabel label;
  Rational min_nu;
};

// Samples a uniform grid over the coordinate box of the given radius, either
// in a two-axis plane slice (other coordinates zero) or over all axes.
// Traversal order is row-major and independent of the thread count.
std::vector<GridSample> sample_ball(const GradedBundle& gb, const Rational& radius,
                                    const std::optional<Plane>& plane, int resolution,
                                    int threads = 1);

// One row per sample: eps coordinates, label, min deficit, active walls.
void write_chamber_csv(std::ostream& os, const GradedBundle& gb,
                       const std::vector<GridSample>& samples);

}  // namespace wallcross
