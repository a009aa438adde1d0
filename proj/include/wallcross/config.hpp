#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wallcross/bundle.hpp"

namespace wallcross {

// A fully validated input: the bundle plus optional per-edge base magnitudes.
struct LoadedConfig {
  GradedBundle gb;
  std::map<Edge, double> magnitudes;
};

struct ParseOutcome {
  std::optional<LoadedConfig> config;
  std::vector<std::string> errors;  // empty iff config is present
};

// Strict parse: unknown fields are rejected, rationals are strings, indices
// are 1-based in the file. Every error carries the offending field path.
ParseOutcome parse_config_json(const nlohmann::json& j);
ParseOutcome parse_config_file(const std::string& path);

// Canonical form: sorted keys, lowest-terms rationals, sorted intersection
// indices. parse(serialize(parse(x))) == parse(x).
nlohmann::json canonical_config_json(const LoadedConfig& config);

// FNV-1a over the canonical serialization, 16 hex digits.
std::string config_digest(const LoadedConfig& config);

}  // namespace wallcross
