#include "hmcf/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hmcf/errors.hpp"
#include "hmcf/io.hpp"

namespace hmcf {

namespace {

const std::vector<std::pair<std::string, std::string>>& defaults() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"beta", "1.2"},
      {"eps", "0.1"},
      {"dt", "0.0075"},
      {"t_end", "0.5"},
      {"forcing_a", "0"},
      {"delta_force", "0"},
      {"kernel.kind", "heat"},
      {"kernel.support", "4"},
      {"kernel.tau", "1"},
      {"kernel.stencil", "directional"},
      {"kernel.substeps", "0"},
      {"grid.n1", "128"},
      {"grid.n2", "128"},
      {"grid.n3", "128"},
      {"grid.box", "2,2,0.75"},
      {"snapshots", ""},
      {"shape.kind", "ball"},
      {"shape.radius", "1.2"},
      {"theta", ""},
      {"profile.h", "0.05"},
      {"profile.t", "0.32"},
      {"calibrate.radius", "1"},
      {"calibrate.box", "2"},
      {"calibrate.n", "96"},
      {"calibrate.n3", "4"},
      {"calibrate.t_end", "1"},
      {"se2.box", "2,2"},
      {"se2.n", "64,64,32"},
      {"se2.tube", "0.4"},
      {"se2.theta_weight", "0.5"},
  };
  return d;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config::Config() {
  for (const auto& [k, v] : defaults()) values_[k] = v;
}

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& kv : defaults()) k.push_back(kv.first);
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::Config, "unknown config key '" + key + "'");
  it->second = trim(value);
}

void Config::apply_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos, ErrorCode::Config, "expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void Config::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      apply_assignment(t);
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Config, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path.string());
}

const std::string& Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::Config, "unknown config key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const {
  try {
    return parse_double(str(key));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    throw Error(ErrorCode::Config, key + ": '" + str(key) + "' is not a number");
  }
}

int Config::integer(const std::string& key) const {
  const double v = num(key);
  require(v == static_cast<int>(v), ErrorCode::Config, key + ": '" + str(key) + "' is not an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(str(key));
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (trim(cell).empty()) continue;
    try {
      out.push_back(parse_double(cell));
    } catch (const Error&) {
      throw Error(ErrorCode::Config, key + ": '" + cell + "' is not a number");
    }
  }
  return out;
}

std::string Config::dump() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + " = " + v + "\n";
  return s;
}

KernelSpec Config::kernel() const {
  const auto& kind = str("kernel.kind");
  KernelSpec J;
  if (kind == "analytic" || kind == "bump") {
    J = KernelSpec::analytic(num("kernel.support"));
  } else if (kind == "heat") {
    const auto& st = str("kernel.stencil");
    require(st == "directional" || st == "centered", ErrorCode::Config,
            "kernel.stencil must be directional or centered, got '" + st + "'");
    J = KernelSpec::heat(num("kernel.tau"), st == "centered" ? HeatStencil::Centered : HeatStencil::Directional);
    J.substeps = integer("kernel.substeps");
  } else {
    throw Error(ErrorCode::Config, "kernel.kind must be analytic or heat, got '" + kind + "'");
  }
  try {
    J.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  return J;
}

EvolutionParams Config::evolution() const {
  EvolutionParams p;
  p.beta = num("beta");
  p.eps = num("eps");
  p.dt = num("dt");
  p.t_end = num("t_end");
  p.forcing = p.beta * num("forcing_a");
  p.kernel = kernel();
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  return p;
}

UniformGrid3 Config::grid() const {
  const auto box = list("grid.box");
  require(box.size() == 3, ErrorCode::Config, "grid.box needs three half widths");
  for (double b : box) require(b > 0.0, ErrorCode::Config, "grid.box entries must be positive");
  const std::array<int, 3> dims{integer("grid.n1"), integer("grid.n2"), integer("grid.n3")};
  for (int n : dims) require(n >= 3, ErrorCode::Config, "grid sizes must be at least 3");
  return UniformGrid3::centered({box[0], box[1], box[2]}, dims);
}

Shape Config::shape() const {
  const auto& kind = str("shape.kind");
  const double r = num("shape.radius");
  require(r > 0.0, ErrorCode::Config, "shape.radius must be positive");
  if (kind == "ball") return Shape::gauge_ball(r);
  if (kind == "cylinder") return Shape::cylinder(r);
  throw Error(ErrorCode::Config, "shape.kind must be ball or cylinder, got '" + kind + "'");
}

}  // namespace hmcf
