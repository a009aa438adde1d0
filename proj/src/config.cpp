#include "wallcross/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace wallcross {

using nlohmann::json;

namespace {

struct Parser {
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& what) {
    errors.push_back(path + ": " + what);
  }

  bool require_keys(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed,
                    const std::set<std::string>& required) {
    bool ok = true;
    for (const auto& [key, _] : obj.items())
      if (!allowed.count(key)) {
        fail(path.empty() ? key : path + "." + key, "unknown field");
        ok = false;
      }
    for (const auto& key : required)
      if (!obj.contains(key)) {
        fail(path.empty() ? key : path + "." + key, "missing field");
        ok = false;
      }
    return ok;
  }

  int positive_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
      fail(path, "must be a positive integer");
      return 0;
    }
    return static_cast<int>(j.get<long long>());
  }

  Rational rational(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "rationals must be strings like \"a\" or \"a/b\"");
      return 0;
    }
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
      return 0;
    }
  }

  CohClass coh_class(const json& j, const std::string& path, int p) {
    CohClass out = CohClass::zero(p);
    if (!j.is_array() || static_cast<int>(j.size()) != p) {
      fail(path, "expected an array of " + std::to_string(p) + " rational strings");
      return out;
    }
    for (int k = 0; k < p; ++k)
      out.c[k] = rational(j[k], path + "[" + std::to_string(k) + "]");
    return out;
  }
};

}  // namespace

ParseOutcome parse_config_json(const json& j) {
  Parser p;
  ParseOutcome out;

  if (!j.is_object()) {
    out.errors.push_back("config: top level must be a JSON object");
    return out;
  }
  p.require_keys(j, "",
                 {"dimension", "h11_rank", "intersection", "omega", "pieces", "edges",
                  "magnitudes"},
                 {"dimension", "h11_rank", "intersection", "omega", "pieces", "edges"});
  if (!p.errors.empty()) {
    out.errors = std::move(p.errors);
    return out;
  }

  LoadedConfig config;
  const int n = p.positive_int(j["dimension"], "dimension");
  const int rank_p = p.positive_int(j["h11_rank"], "h11_rank");
  if (!p.errors.empty()) {
    out.errors = std::move(p.errors);
    return out;
  }
  config.gb.form.dimension = n;
  config.gb.form.h11_rank = rank_p;

  if (!j["intersection"].is_array()) {
    p.fail("intersection", "must be an array of {index, value} entries");
  } else {
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < j["intersection"].size(); ++k) {
      const std::string path = "intersection[" + std::to_string(k) + "]";
      const json& entry = j["intersection"][k];
      if (!entry.is_object()) {
        p.fail(path, "must be an object {index, value}");
        continue;
      }
      if (!p.require_keys(entry, path, {"index", "value"}, {"index", "value"})) continue;
      const json& idx = entry["index"];
      if (!idx.is_array() || static_cast<int>(idx.size()) != n) {
        p.fail(path + ".index", "expected a sorted array of " + std::to_string(n) +
                                    " basis indices (1-based)");
        continue;
      }
      std::vector<int> index;
      bool ok = true;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (!idx[t].is_number_integer() || idx[t].get<int>() < 1 ||
            idx[t].get<int>() > rank_p) {
          p.fail(path + ".index[" + std::to_string(t) + "]",
                 "index must lie in 1.." + std::to_string(rank_p));
          ok = false;
          break;
        }
        index.push_back(idx[t].get<int>() - 1);
      }
      if (!ok) continue;
      if (!std::is_sorted(index.begin(), index.end())) {
        p.fail(path + ".index", "entries must be sorted ascending");
        continue;
      }
      if (!seen.insert(index).second) {
        p.fail(path + ".index", "duplicate multi-index");
        continue;
      }
      const Rational value = p.rational(entry["value"], path + ".value");
      config.gb.form.set_entry(index, value);
    }
  }

  config.gb.omega = p.coh_class(j["omega"], "omega", rank_p);

  if (!j["pieces"].is_array() || j["pieces"].empty()) {
    p.fail("pieces", "must be a nonempty array");
  } else {
    for (std::size_t k = 0; k < j["pieces"].size(); ++k) {
      const std::string path = "pieces[" + std::to_string(k) + "]";
      const json& piece = j["pieces"][k];
      GradedPiece gp;
      if (!piece.is_object() ||
          !p.require_keys(piece, path, {"rank", "c1"}, {"rank", "c1"})) {
        config.gb.pieces.push_back(gp);
        continue;
      }
      gp.rank = p.positive_int(piece["rank"], path + ".rank");
      gp.c1 = p.coh_class(piece["c1"], path + ".c1", rank_p);
      config.gb.pieces.push_back(std::move(gp));
    }
  }

  if (!j["edges"].is_array()) {
    p.fail("edges", "must be an array of [i, j] pairs (1-based)");
  } else {
    for (std::size_t k = 0; k < j["edges"].size(); ++k) {
      const std::string path = "edges[" + std::to_string(k) + "]";
      const json& e = j["edges"][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        p.fail(path, "must be a pair [i, j] of integers");
        continue;
      }
      const int i = e[0].get<int>(), jj = e[1].get<int>();
      if (i < 1 || jj < 1 || i > config.gb.ell() || jj > config.gb.ell() || i >= jj) {
        p.fail(path, "edge must satisfy i < j within 1.." +
                         std::to_string(config.gb.ell()));
        continue;
      }
      config.gb.edges.emplace_back(i - 1, jj - 1);
    }
  }

  if (j.contains("magnitudes")) {
    if (!j["magnitudes"].is_object()) {
      p.fail("magnitudes", "must map \"i,j\" to positive numbers");
    } else {
      for (const auto& [key, value] : j["magnitudes"].items()) {
        const std::string path = "magnitudes[\"" + key + "\"]";
        int i = 0, jj = 0;
        char comma = 0;
        std::istringstream is(key);
        if (!(is >> i >> comma >> jj) || comma != ',' || !is.eof()) {
          p.fail(path, "key must have the form \"i,j\"");
          continue;
        }
        const Edge edge(i - 1, jj - 1);
        if (std::find(config.gb.edges.begin(), config.gb.edges.end(), edge) ==
            config.gb.edges.end()) {
          p.fail(path, "no such edge in the quiver");
          continue;
        }
        if (!value.is_number() || !(value.get<double>() > 0) ||
            !std::isfinite(value.get<double>())) {
          p.fail(path, "magnitude must be a positive finite number");
          continue;
        }
        config.magnitudes[edge] = value.get<double>();
      }
    }
  }

  if (p.errors.empty()) {
    std::sort(config.gb.edges.begin(), config.gb.edges.end());
    for (const auto& v : validate(config.gb)) p.fail(v.invariant, v.detail);
  }

  if (!p.errors.empty()) {
    out.errors = std::move(p.errors);
    return out;
  }
  out.config = std::move(config);
  return out;
}

ParseOutcome parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {std::nullopt, {"cannot open config file '" + path + "'"}};
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    return {std::nullopt, {std::string("invalid JSON: ") + e.what()}};
  }
  return parse_config_json(j);
}

json canonical_config_json(const LoadedConfig& config) {
  const GradedBundle& gb = config.gb;
  json j;
  j["dimension"] = gb.form.dimension;
  j["h11_rank"] = gb.form.h11_rank;
  j["intersection"] = json::array();
  for (const auto& [idx, value] : gb.form.entries) {
    if (value == 0) continue;
    json entry;
    json jidx = json::array();
    for (int i : idx) jidx.push_back(i + 1);
    entry["index"] = jidx;
    entry["value"] = to_string(value);
    j["intersection"].push_back(entry);
  }
  j["omega"] = json::array();
  for (const auto& q : gb.omega.c) j["omega"].push_back(to_string(q));
  j["pieces"] = json::array();
  for (const auto& piece : gb.pieces) {
    json jp;
    jp["rank"] = piece.rank;
    jp["c1"] = json::array();
    for (const auto& q : piece.c1.c) jp["c1"].push_back(to_string(q));
    j["pieces"].push_back(jp);
  }
  j["edges"] = json::array();
  for (const auto& [i, jj] : gb.edges) j["edges"].push_back(json::array({i + 1, jj + 1}));
  if (!config.magnitudes.empty()) {
    json jm = json::object();
    for (const auto& [edge, mag] : config.magnitudes)
      jm[std::to_string(edge.first + 1) + "," + std::to_string(edge.second + 1)] = mag;
    j["magnitudes"] = jm;
  }
  return j;
}

std::string config_digest(const LoadedConfig& config) {
  const std::string text = canonical_config_json(config).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wallcross
