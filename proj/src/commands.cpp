#include "wallcross/commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "wallcross/momentmap.hpp"

namespace wallcross {

using nlohmann::json;

VecQ parse_eps_list(const std::string& text) {
  VecQ out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) out.push_back(parse_rational(token));
  if (out.empty()) throw std::invalid_argument("empty eps list");
  return out;
}

namespace {

constexpr const char* kRadiusCaveat =
    "chamber labels are exact sign conditions on the slope-deficit polynomials; "
    "they certify actual (in)stability only within a neighbourhood of the base "
    "polarisation whose radius is analytic input, not derived here";

json rational_array(const VecQ& v) {
  json arr = json::array();
  for (const auto& q : v) arr.push_back(to_string(q));
  return arr;
}

json subset_1based(const std::vector<int>& indices) {
  json arr = json::array();
  for (int i : indices) arr.push_back(i + 1);
  return arr;
}

json label_json(const ChamberLabel& label) {
  json j;
  j["label"] = to_string(label.kind);
  j["witnesses"] = json::array();
  for (const auto& sub : label.witnesses) j["witnesses"].push_back(subset_1based(sub.indices));
  return j;
}

json envelope(const std::string& command, const LoadedConfig& config,
              const json& arguments, const json& results,
              const std::vector<std::string>& warnings) {
  json j;
  j["format_version"] = kFormatVersion;
  j["command"] = command;
  j["arguments"] = arguments;
  j["input_digest"] = config_digest(config);
  j["warnings"] = warnings;
  j["results"] = results;
  return j;
}

void add_volume_warning(const LoadedConfig& config, const VecQ& eps,
                        std::vector<std::string>& warnings) {
  const CohClass l = config.gb.kahler_class(eps);
  if (volume(config.gb.form, l) <= 0)
    warnings.push_back(
        "the evaluated class has nonpositive volume; it cannot be a Kahler class");
}

json eps_check(const LoadedConfig& config, const VecQ& eps) {
  if (static_cast<int>(eps.size()) != config.gb.form.h11_rank)
    throw std::invalid_argument("eps has length " + std::to_string(eps.size()) +
                                ", expected " +
                                std::to_string(config.gb.form.h11_rank));
  return rational_array(eps);
}

json cone_json(const RationalCone& cone) {
  json j;
  j["ambient_dim"] = cone.ambient_dim;
  j["generators"] = json::array();
  for (const auto& g : cone.generators) j["generators"].push_back(rational_array(g));
  j["facet_normals"] = json::array();
  for (const auto& f : cone.facet_normals) j["facet_normals"].push_back(rational_array(f));
  j["subspace"] = json::array();
  for (const auto& s : cone.subspace) j["subspace"].push_back(rational_array(s));
  return j;
}

json solution_json(const OrbitModel& orbit, const MomentSolution& sol) {
  json j;
  j["status"] = to_string(sol.status);
  if (!sol.reason.empty()) j["reason"] = sol.reason;
  j["x"] = sol.x;
  json t = json::object();
  for (std::size_t e = 0; e < orbit.edges.size(); ++e)
    t[std::to_string(orbit.edges[e].first + 1) + "," +
      std::to_string(orbit.edges[e].second + 1)] = sol.t.empty() ? 0.0 : sol.t[e];
  j["t"] = t;
  double sum = 0;
  for (double v : sol.t) sum += v;
  j["sum_t"] = sum;
  j["residual"] = sol.residual;
  j["iterations"] = sol.iterations;
  return j;
}

}  // namespace

CommandResult run_classify(const LoadedConfig& config, const ClassifyRequest& req) {
  std::vector<std::string> warnings{kRadiusCaveat};
  json args;
  args["eps"] = eps_check(config, req.eps);
  add_volume_warning(config, req.eps, warnings);

  json results = label_json(classify(config.gb, req.eps));
  results["min_nu"] = to_string(min_nu(config.gb, req.eps));
  results["nu"] = json::array();
  for (const auto& [sub, nu] : nu_values(config.gb, req.eps)) {
    json entry;
    entry["subset"] = subset_1based(sub.indices);
    entry["value"] = to_string(nu);
    results["nu"].push_back(entry);
  }
  return {envelope("classify", config, args, results, warnings), kExitOk};
}

CommandResult run_chambers(const LoadedConfig& config, const ChambersRequest& req) {
  std::vector<std::string> warnings{kRadiusCaveat};
  json args;
  args["radius"] = to_string(req.radius);
  args["resolution"] = req.resolution;
  args["out"] = req.out_path;
  if (req.plane)
    args["plane"] = json::array({req.plane->axis_a + 1, req.plane->axis_b + 1});
  else
    args["plane"] = "all";
  add_volume_warning(config, zero_vec(config.gb.form.h11_rank), warnings);

  const auto samples =
      sample_ball(config.gb, req.radius, req.plane, req.resolution, req.threads);

  std::ofstream csv(req.out_path, std::ios::binary);
  if (!csv) {
    json err;
    err["errors"] = json::array({"cannot open output file '" + req.out_path + "'"});
    return {err, kExitValidation};
  }
  write_chamber_csv(csv, config.gb, samples);

  json counts;
  counts["stable"] = 0;
  counts["unstable"] = 0;
  counts["strictly_semistable"] = 0;
  for (const auto& s : samples)
    counts[to_string(s.label.kind)] = counts[to_string(s.label.kind)].get<int>() + 1;

  json results;
  results["samples"] = samples.size();
  results["counts"] = counts;
  results["csv"] = req.out_path;
  return {envelope("chambers", config, args, results, warnings), kExitOk};
}

CommandResult run_cone(const LoadedConfig& config, const ConeRequest& req) {
  json args;
  args["dual"] = req.dual;
  args["check_partition"] = req.check_partition;

  const RationalCone sigma = weight_cone(config.gb);
  json results;
  results["sigma"] = cone_json(sigma);

  if (req.dual || req.check_partition) {
    const RationalCone dual = dual_cone(sigma, config.gb.ranks());
    results["dual"] = cone_json(dual);

    if (req.check_partition) {
      const auto ranks = config.gb.ranks();
      const auto candidates = candidate_dual_generators(config.gb);
      json check;
      check["rays"] = json::array();
      bool all_two_valued = true, all_plus_closed = true, all_candidates = true;
      for (const auto& ray : dual.generators) {
        json entry;
        entry["ray"] = rational_array(ray);
        const auto part = partition_form(ray, ranks);
        if (!part) {
          all_two_valued = false;
          entry["partition"] = nullptr;
        } else {
          entry["partition"] =
              json{{"plus", subset_1based(part->plus)}, {"minus", subset_1based(part->minus)}};
          // plus must be closed: no edge enters it from outside.
          bool closed = true;
          for (const auto& [i, jj] : config.gb.edges) {
            const bool j_in = std::binary_search(part->plus.begin(), part->plus.end(), jj);
            const bool i_in = std::binary_search(part->plus.begin(), part->plus.end(), i);
            if (j_in && !i_in) closed = false;
          }
          entry["plus_closed"] = closed;
          all_plus_closed = all_plus_closed && closed;
          bool is_candidate = false;
          for (const auto& cand : candidates)
            if (cand.vector == part->canonical) is_candidate = true;
          entry["is_candidate"] = is_candidate;
          all_candidates = all_candidates && is_candidate;
        }
        check["rays"].push_back(entry);
      }
      check["all_rays_two_valued"] = all_two_valued;
      check["all_plus_closed"] = all_plus_closed;
      check["extremal_rays_subset_of_candidates"] = all_candidates;
      results["partition_check"] = check;
    }
  }
  return {envelope("cone", config, args, results, {}), kExitOk};
}

CommandResult run_solve(const LoadedConfig& config, const SolveRequest& req) {
  std::vector<std::string> warnings;
  json args;
  args["eps"] = eps_check(config, req.eps);
  args["tol"] = req.tol;
  add_volume_warning(config, req.eps, warnings);

  const OrbitModel orbit = make_orbit(config.gb, config.magnitudes);
  const MomentOrigin origin = moment_origin(config.gb, req.eps);
  SolverOptions opts;
  opts.tol = req.tol;
  const MomentSolution sol = kempf_ness_solve(orbit, origin.w, opts);

  json results = solution_json(orbit, sol);
  results["w"] = rational_array(origin.w);
  const RationalCone sigma = weight_cone(config.gb);
  results["membership"] =
      is_zero_vec(origin.w) ? "apex" : to_string(interior_membership(sigma, negate(origin.w)));

  const int code = (sol.status == SolveStatus::MaxIterations ||
                    sol.status == SolveStatus::Failed)
                       ? kExitNoConvergence
                       : kExitOk;
  return {envelope("solve", config, args, results, warnings), code};
}

CommandResult run_path(const LoadedConfig& config, const PathRequest& req) {
  std::vector<std::string> warnings;
  json args;
  args["eps_from"] = eps_check(config, req.eps_from);
  args["eps_to"] = eps_check(config, req.eps_to);
  args["mode"] = req.geometric ? "geometric" : "linear";
  args["steps"] = req.steps;
  args["t_start"] = req.t_start;
  args["t_end"] = req.t_end;
  args["out"] = req.out_path;

  if (req.steps < 2) throw std::invalid_argument("path needs at least 2 steps");
  if (!(req.t_start > req.t_end) || !(req.t_end > 0))
    throw std::invalid_argument("path needs t_start > t_end > 0");

  std::vector<Rational> samples;
  for (int k = 0; k < req.steps; ++k) {
    const double frac = static_cast<double>(k) / (req.steps - 1);
    const double tk = req.geometric
                          ? req.t_start * std::pow(req.t_end / req.t_start, frac)
                          : req.t_start + (req.t_end - req.t_start) * frac;
    samples.push_back(rational_from_double(tk));
  }

  const VecQ delta = sub(req.eps_from, req.eps_to);
  auto path_fn = [&](const Rational& t) { return add(req.eps_to, scale(t, delta)); };

  const OrbitModel orbit = make_orbit(config.gb, config.magnitudes);
  SolverOptions opts;
  opts.tol = req.tol;
  const auto points = solve_path(config.gb, orbit, path_fn, samples, opts);

  std::ofstream csv(req.out_path, std::ios::binary);
  if (!csv) {
    json err;
    err["errors"] = json::array({"cannot open output file '" + req.out_path + "'"});
    return {err, kExitValidation};
  }
  write_path_csv(csv, orbit, points);

  json statuses = json::object();
  bool nonconverged = false;
  for (const auto& p : points) {
    const std::string key = to_string(p.sol.status);
    statuses[key] = statuses.contains(key) ? statuses[key].get<int>() + 1 : 1;
    nonconverged = nonconverged || p.sol.status == SolveStatus::MaxIterations ||
                   p.sol.status == SolveStatus::Failed;
  }
  json results;
  results["samples"] = points.size();
  results["csv"] = req.out_path;
  results["statuses"] = statuses;
  if (!points.empty()) {
    results["final"] = solution_json(orbit, points.back().sol);
    results["final"]["t"] = to_double(points.back().t);
  }
  return {envelope("path", config, args, results, warnings),
          nonconverged ? kExitNoConvergence : kExitOk};
}

CommandResult run_filtration(const LoadedConfig& config, const FiltrationRequest& req) {
  std::vector<std::string> warnings{kRadiusCaveat};
  json args;
  args["eps"] = eps_check(config, req.eps);
  add_volume_warning(config, req.eps, warnings);

  const ChamberLabel label = classify(config.gb, req.eps);
  if (label.kind != StabilityKind::StrictlySemistable) {
    json err;
    err["errors"] = json::array(
        {"filtration needs a strictly semistable class; this one classifies " +
         std::string(to_string(label.kind))});
    return {err, kExitValidation};
  }

  const DegenerationReport report = degeneration_filtration(config.gb, req.eps);
  json results;
  results["chain"] = json::array();
  for (const auto& stage : report.chain) results["chain"].push_back(subset_1based(stage));
  results["levels"] = json::array();
  for (const auto& level : report.levels) results["levels"].push_back(subset_1based(level));
  results["dying_edges"] = json::array();
  for (const auto& [i, j] : report.dying)
    results["dying_edges"].push_back(json::array({i + 1, j + 1}));
  results["surviving_edges"] = json::array();
  for (const auto& [i, j] : report.surviving)
    results["surviving_edges"].push_back(json::array({i + 1, j + 1}));
  results["limit_pieces"] = json::array();
  for (const auto& piece : report.limit_pieces) {
    json jp;
    jp["indices"] = subset_1based(piece.indices);
    jp["rank"] = piece.rank;
    jp["c1"] = rational_array(piece.c1.c);
    jp["wall_slope"] = to_string(piece.wall_slope);
    results["limit_pieces"].push_back(jp);
  }
  results["ties"] = report.ties;
  return {envelope("filtration", config, args, results, warnings), kExitOk};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stability chambers and moment-map degenerations for graded bundles"};
  app.require_subcommand(1);

  std::string config_path;
  std::string eps_text, eps_from_text, eps_to_text, plane_text, out_path;
  std::string radius_text = "1";
  int resolution = 21, steps = 13, threads = 1;
  double tol = 1e-10, t_start = 1.0, t_end = 1e-8;
  bool dual = false, check_partition = false, geometric = false, linear = false;

  auto* classify_cmd = app.add_subcommand("classify", "label one perturbed class");
  classify_cmd->add_option("config", config_path, "input JSON")->required();
  classify_cmd->add_option("--eps", eps_text, "comma-separated rationals")->required();

  auto* chambers_cmd = app.add_subcommand("chambers", "sample the chamber decomposition");
  chambers_cmd->add_option("config", config_path)->required();
  chambers_cmd->add_option("--radius", radius_text, "box radius (rational)");
  chambers_cmd->add_option("--plane", plane_text, "two 1-based axes, e.g. 1,2");
  chambers_cmd->add_option("--grid", resolution, "samples per axis");
  chambers_cmd->add_option("--out", out_path, "CSV output path")->required();
  chambers_cmd->add_option("--threads", threads, "worker threads");

  auto* cone_cmd = app.add_subcommand("cone", "weight cone and its dual");
  cone_cmd->add_option("config", config_path)->required();
  cone_cmd->add_flag("--dual", dual, "also compute the dual cone");
  cone_cmd->add_flag("--check-partition", check_partition,
                     "verify the two-value form of the dual rays");

  auto* solve_cmd = app.add_subcommand("solve", "moment-map zero at one class");
  solve_cmd->add_option("config", config_path)->required();
  solve_cmd->add_option("--eps", eps_text)->required();
  solve_cmd->add_option("--tol", tol, "residual tolerance");

  auto* path_cmd = app.add_subcommand("path", "solve along a polarisation path");
  path_cmd->add_option("config", config_path)->required();
  path_cmd->add_option("--eps-from", eps_from_text)->required();
  path_cmd->add_option("--eps-to", eps_to_text)->required();
  path_cmd->add_flag("--geometric", geometric, "geometric t samples (default)");
  path_cmd->add_flag("--linear", linear, "linear t samples");
  path_cmd->add_option("--steps", steps, "number of samples");
  path_cmd->add_option("--t-start", t_start);
  path_cmd->add_option("--t-end", t_end);
  path_cmd->add_option("--tol", tol, "residual tolerance");
  path_cmd->add_option("--out", out_path, "CSV output path")->required();

  auto* filtration_cmd = app.add_subcommand("filtration", "degeneration at a wall class");
  filtration_cmd->add_option("config", config_path)->required();
  filtration_cmd->add_option("--eps", eps_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  const auto outcome = parse_config_file(config_path);
  if (!outcome.config) {
    json report;
    report["format_version"] = kFormatVersion;
    report["errors"] = outcome.errors;
    out << report.dump(2) << "\n";
    return kExitValidation;
  }
  const LoadedConfig& config = *outcome.config;

  try {
    CommandResult result;
    if (classify_cmd->parsed()) {
      result = run_classify(config, {parse_eps_list(eps_text)});
    } else if (chambers_cmd->parsed()) {
      ChambersRequest req;
      req.radius = parse_rational(radius_text);
      req.resolution = resolution;
      req.out_path = out_path;
      req.threads = threads;
      if (!plane_text.empty()) {
        int a = 0, b = 0;
        char comma = 0;
        std::istringstream is(plane_text);
        if (!(is >> a >> comma >> b) || comma != ',' || !is.eof() || a < 1 || b < 1)
          throw std::invalid_argument("--plane needs two 1-based axes like 1,2");
        req.plane = Plane{a - 1, b - 1};
      }
      result = run_chambers(config, req);
    } else if (cone_cmd->parsed()) {
      result = run_cone(config, {dual, check_partition});
    } else if (solve_cmd->parsed()) {
      result = run_solve(config, {parse_eps_list(eps_text), tol});
    } else if (path_cmd->parsed()) {
      PathRequest req;
      req.eps_from = parse_eps_list(eps_from_text);
      req.eps_to = parse_eps_list(eps_to_text);
      req.geometric = !linear;
      req.steps = steps;
      req.t_start = t_start;
      req.t_end = t_end;
      req.tol = tol;
      req.out_path = out_path;
      result = run_path(config, req);
    } else if (filtration_cmd->parsed()) {
      result = run_filtration(config, {parse_eps_list(eps_text)});
    }
    out << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    json report;
    report["format_version"] = kFormatVersion;
    report["errors"] = json::array({e.what()});
    out << report.dump(2) << "\n";
    return kExitValidation;
  }
}

}  // namespace wallcross
