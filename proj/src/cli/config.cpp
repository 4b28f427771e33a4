#include "qcc/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "qcc/crystal1d.hpp"

namespace qcc::cli {
namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
  }

  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  const json* find(std::string_view key) {
    used_.insert(std::string(key));
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  double number(std::string_view key, double def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_number()) fail(at(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(at(key), "must be finite");
    return x;
  }

  double required_number(std::string_view key) {
    if (!node_.contains(key)) fail(at(key), "missing required key");
    return number(key, 0.0);
  }

  double positive(std::string_view key, double def) {
    const double x = number(key, def);
    if (!(x > 0.0)) fail(at(key), "must be > 0");
    return x;
  }

  double non_negative(std::string_view key, double def) {
    const double x = number(key, def);
    if (!(x >= 0.0)) fail(at(key), "must be >= 0");
    return x;
  }

  std::uint64_t unsigned_integer(std::string_view key, std::uint64_t def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      fail(at(key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::size_t count(std::string_view key, std::size_t def, std::size_t min) {
    const std::uint64_t n = unsigned_integer(key, def);
    if (n < min) fail(at(key), "must be >= " + std::to_string(min));
    return static_cast<std::size_t>(n);
  }

  bool boolean(std::string_view key, bool def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_boolean()) fail(at(key), "expected true or false");
    return v->get<bool>();
  }

  GridConfig grid(std::string_view key, const GridConfig& def, bool positive_start) {
    const json* v = find(key);
    if (!v) return def;
    Reader r(*v, at(key));
    GridConfig g;
    g.start = r.number("start", def.start);
    g.stop = r.number("stop", def.stop);
    g.points = r.count("points", def.points, 1);
    r.finish();
    if (g.stop < g.start) fail(at(key), "stop must be >= start");
    if (g.points > 1 && g.stop == g.start) fail(at(key), "stop must exceed start when points > 1");
    if (positive_start && !(g.start > 0.0)) fail(at(key) + ".start", "must be > 0");
    return g;
  }

  std::vector<ElementConfig> elements(std::string_view key, std::vector<ElementConfig> def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_array()) fail(at(key), "expected an array of elements");
    std::vector<ElementConfig> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string where = at(key) + "[" + std::to_string(i) + "]";
      Reader r((*v)[i], where);
      const json* type = r.find("type");
      if (!type || !type->is_string()) fail(where + ".type", "expected \"junction\" or \"segment\"");
      ElementConfig e;
      const auto name = type->get<std::string>();
      if (name == "junction") {
        e.is_junction = true;
        e.junction.omega_p = r.required_number("omega_p");
        e.junction.z_ratio = r.required_number("z_ratio");
        if (!(e.junction.omega_p > 0.0)) fail(where + ".omega_p", "must be > 0");
        if (!(e.junction.z_ratio > 0.0)) fail(where + ".z_ratio", "must be > 0");
      } else if (name == "segment") {
        e.is_junction = false;
        e.length = r.required_number("length");
        if (!(e.length >= 0.0)) fail(where + ".length", "must be >= 0");
      } else {
        fail(where + ".type", "expected \"junction\" or \"segment\", got \"" + name + "\"");
      }
      r.finish();
      out.push_back(e);
    }
    return out;
  }

  JunctionSpec junction(std::string_view key, const JunctionSpec& def) {
    const json* v = find(key);
    if (!v) return def;
    Reader r(*v, at(key));
    JunctionSpec j{r.positive("omega_p", def.omega_p), r.positive("z_ratio", def.z_ratio)};
    r.finish();
    return j;
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!used_.count(it.key())) fail(at(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

constexpr const char* kRoot = "config";

std::vector<ElementConfig> junction_cell(double omega_p, double z_ratio, double spacing) {
  ElementConfig j;
  j.is_junction = true;
  j.junction = {omega_p, z_ratio};
  ElementConfig s;
  s.is_junction = false;
  s.length = spacing;
  return {j, s};
}

json grid_json(const GridConfig& g) {
  return {{"start", g.start}, {"stop", g.stop}, {"points", g.points}};
}

json elements_json(const std::vector<ElementConfig>& elements) {
  json arr = json::array();
  for (const auto& e : elements) {
    if (e.is_junction) {
      arr.push_back({{"type", "junction"}, {"omega_p", e.junction.omega_p}, {"z_ratio", e.junction.z_ratio}});
    } else {
      arr.push_back({{"type", "segment"}, {"length", e.length}});
    }
  }
  return arr;
}

json junction_json(const JunctionSpec& j) { return {{"omega_p", j.omega_p}, {"z_ratio", j.z_ratio}}; }

}  // namespace

std::vector<double> GridConfig::values() const { return linspace(start, stop, points); }

CrystalChain to_chain(const std::vector<ElementConfig>& elements) {
  CrystalChain chain;
  for (const auto& e : elements) {
    if (e.is_junction) {
      chain.elements.emplace_back(e.junction);
    } else {
      chain.elements.emplace_back(Segment{wavelengths(e.length)});
    }
  }
  return chain;
}

ScatterConfig parse_scatter(const json& j) {
  Reader r(j, kRoot);
  ScatterConfig c;
  c.junction = r.junction("junction", c.junction);
  c.omega = r.grid("omega", c.omega, true);
  r.finish();
  return c;
}

Bands1dConfig parse_bands1d(const json& j) {
  Reader r(j, kRoot);
  Bands1dConfig c;
  c.cell = r.elements("cell", junction_cell(1.0, 10.0, 0.1));
  c.omega = r.grid("omega", c.omega, true);
  r.finish();
  if (to_chain(c.cell).length() <= 0.0) Reader::fail("config.cell", "cell must have positive length");
  return c;
}

Bands2dConfig parse_bands2d(const json& j) {
  Reader r(j, kRoot);
  Bands2dConfig c;
  c.cell = r.elements("cell", junction_cell(1.1, 0.8, 0.1));
  if (j.contains("cell_v")) c.cell_v = r.elements("cell_v", {});
  c.omegas = {0.5, 2.5, 3.5, 4.5};
  if (const json* v = r.find("omegas")) {
    if (!v->is_array() || v->empty()) Reader::fail("config.omegas", "expected a non-empty array of numbers");
    c.omegas.clear();
    for (const auto& w : *v) {
      if (!w.is_number() || !(w.get<double>() > 0.0)) {
        Reader::fail("config.omegas", "every frequency must be a positive number");
      }
      c.omegas.push_back(w.get<double>());
    }
  }
  c.resolution = r.count("resolution", c.resolution, 2);
  r.finish();
  if (to_chain(c.cell).length() <= 0.0) Reader::fail("config.cell", "cell must have positive length");
  if (c.cell_v && to_chain(*c.cell_v).length() <= 0.0) {
    Reader::fail("config.cell_v", "cell must have positive length");
  }
  return c;
}

RefractConfig parse_refract(const json& j) {
  Reader r(j, kRoot);
  RefractConfig c;
  c.cell = r.elements("cell", junction_cell(1.1, 0.8, 0.1));
  c.c1 = r.positive("c1", c.c1);
  c.rotated = r.boolean("rotated", c.rotated);
  c.omega = r.grid("omega", c.omega, true);
  c.theta_in = r.grid("theta_in", c.theta_in, false);
  r.finish();
  if (to_chain(c.cell).length() <= 0.0) Reader::fail("config.cell", "cell must have positive length");
  if (c.theta_in.start <= -std::numbers::pi / 2 || c.theta_in.stop >= std::numbers::pi / 2) {
    Reader::fail("config.theta_in", "angles must lie strictly inside (-pi/2, pi/2)");
  }
  return c;
}

EntangleConfig parse_entangle(const json& j) {
  Reader r(j, kRoot);
  EntangleConfig c;
  c.junction = r.junction("junction", c.junction);
  c.n_junctions = r.count("n_junctions", c.n_junctions, 1);
  c.length = r.non_negative("length", c.length);
  c.omega = r.grid("omega", c.omega, true);
  c.delta = r.grid("delta", c.delta, false);
  c.realizations = r.count("realizations", c.realizations, 1);
  c.d_points = r.count("d_points", c.d_points, 1);
  c.f = r.non_negative("f", c.f);
  c.lambda_nr = r.non_negative("lambda_nr", c.lambda_nr);
  c.gamma0 = r.positive("gamma0", c.gamma0);
  c.correlated_draws = r.boolean("correlated_draws", c.correlated_draws);
  r.finish();
  if (c.delta.start < 0.0 || c.delta.stop >= 1.0) {
    Reader::fail("config.delta", "disorder strengths must lie in [0, 1)");
  }
  return c;
}

GreensConfig parse_greens(const json& j) {
  Reader r(j, kRoot);
  GreensConfig c;
  c.chain = r.elements("chain", {junction_cell(1.0, 10.0, 0.0).front()});
  c.omega = r.positive("omega", c.omega);
  c.source = r.number("source", c.source);
  c.x = r.grid("x", c.x, false);
  r.finish();
  return c;
}

json to_json(const ScatterConfig& c) {
  return {{"junction", junction_json(c.junction)}, {"omega", grid_json(c.omega)}};
}

json to_json(const Bands1dConfig& c) {
  return {{"cell", elements_json(c.cell)}, {"omega", grid_json(c.omega)}};
}

json to_json(const Bands2dConfig& c) {
  json j{{"cell", elements_json(c.cell)}, {"omegas", c.omegas}, {"resolution", c.resolution}};
  if (c.cell_v) j["cell_v"] = elements_json(*c.cell_v);
  return j;
}

json to_json(const RefractConfig& c) {
  return {{"cell", elements_json(c.cell)},   {"c1", c.c1},
          {"rotated", c.rotated},            {"omega", grid_json(c.omega)},
          {"theta_in", grid_json(c.theta_in)}};
}

json to_json(const EntangleConfig& c) {
  return {{"junction", junction_json(c.junction)},
          {"n_junctions", c.n_junctions},
          {"length", c.length},
          {"omega", grid_json(c.omega)},
          {"delta", grid_json(c.delta)},
          {"realizations", c.realizations},
          {"d_points", c.d_points},
          {"f", c.f},
          {"lambda_nr", c.lambda_nr},
          {"gamma0", c.gamma0},
          {"correlated_draws", c.correlated_draws}};
}

json to_json(const GreensConfig& c) {
  return {{"chain", elements_json(c.chain)},
          {"omega", c.omega},
          {"source", c.source},
          {"x", grid_json(c.x)}};
}

LoadedConfig load_config(const std::string& command, const json& document,
                         std::optional<std::uint64_t> seed_override) {
  if (!document.is_object()) throw ConfigError("config: expected a JSON object");
  json body = document;
  if (document.contains("command") && document.contains("config")) {
    Reader manifest(document, "manifest");
    const json* cmd = manifest.find("command");
    if (!cmd->is_string() || cmd->get<std::string>() != command) {
      Reader::fail("manifest.command", "manifest was written by a different command");
    }
    manifest.find("version");
    manifest.find("seed");
    body = *manifest.find("config");
    manifest.finish();
    if (!body.is_object()) Reader::fail("manifest.config", "expected an object");
  }

  std::uint64_t seed = 0;
  {
    Reader seed_reader(body, kRoot);
    seed = seed_reader.unsigned_integer("seed", 0);
  }
  body.erase("seed");
  if (seed_override) seed = *seed_override;

  LoadedConfig out;
  out.command = command;
  out.seed = seed;
  if (command == "scatter") {
    out.effective = to_json(parse_scatter(body));
  } else if (command == "bands1d") {
    out.effective = to_json(parse_bands1d(body));
  } else if (command == "bands2d") {
    out.effective = to_json(parse_bands2d(body));
  } else if (command == "refract") {
    out.effective = to_json(parse_refract(body));
  } else if (command == "entangle") {
    out.effective = to_json(parse_entangle(body));
  } else if (command == "greens") {
    out.effective = to_json(parse_greens(body));
  } else {
    throw ConfigError("unknown command \"" + command + "\"");
  }
  out.effective["seed"] = seed;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace qcc::cli
