#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hmcf/evolution.hpp"
#include "hmcf/grid.hpp"
#include "hmcf/kernel.hpp"

namespace hmcf {

/// Flat "key = value" settings. Lines starting with '#' are comments. Only
/// known keys are accepted; anything else is a Config error.
class Config {
 public:
  Config();  // every key at its default

  static const std::vector<std::string>& known_keys();

  void set(const std::string& key, const std::string& value);
  void load_text(const std::string& text, const std::string& origin = "<text>");
  void load_file(const std::filesystem::path& path);
  /// Applies "key=value".
  void apply_assignment(const std::string& assignment);

  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;  // comma separated, may be empty
  bool empty(const std::string& key) const { return str(key).empty(); }

  /// Resolved settings in file syntax, sorted by key.
  std::string dump() const;

  KernelSpec kernel() const;
  /// Evolution parameters; forcing_a is given in tanh(beta (m + a)) units and
  /// scaled to beta * a here.
  EvolutionParams evolution() const;
  UniformGrid3 grid() const;
  Shape shape() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace hmcf
