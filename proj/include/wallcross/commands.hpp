#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wallcross/chambers.hpp"
#include "wallcross/config.hpp"

namespace wallcross {

// Exit codes: 0 success (a solver answering "no solution" is an answer),
// 2 validation error, 3 solver nonconvergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoConvergence = 3;

inline constexpr const char* kFormatVersion = "1";

struct ClassifyRequest {
  VecQ eps;
};
struct ChambersRequest {
  Rational radius = 1;
  std::optional<Plane> plane;  // nullopt: all axes
  int resolution = 21;
  std::string out_path;
  int threads = 1;
};
struct ConeRequest {
  bool dual = false;
  bool check_partition = false;
};
struct SolveRequest {
  VecQ eps;
  double tol = 1e-10;
};
struct PathRequest {
  VecQ eps_from, eps_to;
  bool geometric = true;
  int steps = 13;
  double t_start = 1.0;
  double t_end = 1e-8;
  double tol = 1e-10;
  std::string out_path;
};
struct FiltrationRequest {
  VecQ eps;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitOk;
};

CommandResult run_classify(const LoadedConfig& config, const ClassifyRequest& req);
CommandResult run_chambers(const LoadedConfig& config, const ChambersRequest& req);
CommandResult run_cone(const LoadedConfig& config, const ConeRequest& req);
CommandResult run_solve(const LoadedConfig& config, const SolveRequest& req);
CommandResult run_path(const LoadedConfig& config, const PathRequest& req);
CommandResult run_filtration(const LoadedConfig& config, const FiltrationRequest& req);

// Full CLI: parses argv, prints a JSON report to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parses "a,b/c,-d" into rationals; throws std::invalid_argument.
VecQ parse_eps_list(const std::string& text);

}  // namespace wallcross
