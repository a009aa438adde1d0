#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wallcross/chambers.hpp"
#include "wallcross/cones.hpp"

namespace wallcross {

// w_i = deg_eps(G_i) - r_i * mu_eps(E), exact; positive scalar factors of the
// underlying pairing are dropped, which changes no sign, membership or limit.
struct MomentOrigin {
  VecQ w;
};

MomentOrigin moment_origin(const GradedBundle& gb, const VecQ& eps);

// The torus orbit data: quiver edges, ranks, and the base magnitude of each
// extension component (all positive; defaults to 1).
struct OrbitModel {
  std::vector<Edge> edges;
  std::vector<int> ranks;
  std::vector<double> base_magnitudes;
};

OrbitModel make_orbit(const GradedBundle& gb,
                      const std::map<Edge, double>& magnitudes = {});

enum class SolveStatus { Solved, NoSolution, MaxIterations, Failed };

const char* to_string(SolveStatus s);

struct MomentSolution {
  SolveStatus status = SolveStatus::Failed;
  std::string reason;          // apex / boundary / outside, or failure detail
  std::vector<double> x;       // torus coordinate on the gauge slice
  std::vector<double> t;       // per-edge magnitudes t0 * exp(2(x_i - x_j))
  double residual = 0;         // max-norm of w + sum t_e m_e
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 200;
  bool check_membership = true;            // exact cone gate before iterating
  std::optional<std::vector<double>> x0;   // warm start, projected to the slice
};

// Minimizes <w,x> + 1/2 sum_e t0_e exp(2(x_i - x_j)) over { sum r_i x_i = 0 }
// by damped Newton with Armijo backtracking. Solves the moment equation
// exactly when -w lies in the interior of the weight cone; otherwise reports
// NoSolution with the membership verdict, without iterating.
MomentSolution kempf_ness_solve(const OrbitModel& orbit, const VecQ& w,
                                const SolverOptions& opts = {});
MomentSolution kempf_ness_solve(const OrbitModel& orbit, const VecQ& w, double tol,
                                int max_iter);

struct PathPoint {
  Rational t;
  VecQ eps;
  ChamberLabel label;
  MomentSolution sol;
  double sum_t = 0;  // sum of the edge magnitudes at the solution
};

// Solves along eps(t) for the given decreasing t samples, warm-starting each
// solve at the previous minimizer. Samples that do not classify Stable are
// still attempted and reported; nothing is fatal per-sample.
std::vector<PathPoint> solve_path(const GradedBundle& gb, const OrbitModel& orbit,
                                  const std::function<VecQ(const Rational&)>& path,
                                  const std::vector<Rational>& samples,
                                  const SolverOptions& opts = {});

// CSV: t, one column per edge, sum, residual, iterations, status.
void write_path_csv(std::ostream& os, const OrbitModel& orbit,
                    const std::vector<PathPoint>& points);

struct DegenerationReport {
  VecQ wall_eps;
  // I_1 c I_2 c ... c I_l = {0..ell-1}; the empty set is implicit.
  std::vector<std::vector<int>> chain;
  std::vector<std::vector<int>> levels;  // successive differences
  std::vector<Edge> surviving;           // both endpoints in one level
  std::vector<Edge> dying;               // endpoints in different levels
  struct Piece {
    std::vector<int> indices;
    int rank = 0;
    CohClass c1;
    Rational wall_slope;
  };
  std::vector<Piece> limit_pieces;
  std::vector<std::string> ties;  // rank ties resolved lexicographically
};

// Builds the filtration at a strictly semistable wall class, top-down: each
// step picks the closed subset of maximal rank (ties lexicographic, reported)
// among those with wall slope equal to the full bundle's. Throws unless the
// wall class classifies StrictlySemistable.
DegenerationReport degeneration_filtration(const GradedBundle& gb, const VecQ& wall_eps);

struct SupportVerdict {
  bool confirmed = true;
  std::vector<std::string> mismatches;
};

// Checks the tail of a solved path against a degeneration report: dying edges
// must decrease monotonically below the threshold, surviving edges must stay
// above it.
SupportVerdict limit_support_check(const std::vector<PathPoint>& path,
                                   const DegenerationReport& report, double threshold);

// Internals exposed for verification: energy, gradient, and the smallest
// Hessian eigenvalue on the gauge slice.
double kn_energy(const OrbitModel& orbit, const std::vector<double>& w,
                 const std::vector<double>& x);
std::vector<double> kn_gradient(const OrbitModel& orbit, const std::vector<double>& w,
                                const std::vector<double>& x);
double kn_hessian_min_eigenvalue(const OrbitModel& orbit, const std::vector<double>& x);

}  // namespace wallcross
