#pragma once

// Named curves shipped as data files: a3, a5, a7, and the family Cg
// (y^2 = x^(2g+1) + (x+1)^2, written C1 .. C12).

#include <optional>
#include <string>
#include <vector>

#include "selchab/curve.hpp"

namespace selchab {

/// SELCHAB_DATA_DIR if set, else the directory configured at build time.
std::string data_dir();
/// Resolves a path relative to data_dir() unless it is absolute or exists as given.
std::string data_path(const std::string& relative);

struct Preset {
  std::string name;
  int g = 0;
  IntPoly h;
  std::optional<IntPoly> published_f;
  std::string disc_sign;                 // "+" or "-"
  std::vector<std::string> disc_factors;  // decimal
  std::optional<std::string> selmer_file;  // relative to data_dir()
  std::optional<std::string> u_file;
  std::string source;
  CurveSpec curve() const { return new_curve(g, h); }
};

std::vector<std::string> preset_names();
/// Throws InvalidInput for unknown names or malformed files. The published f,
/// when present, must agree with x^(2g+1) + h^2.
Preset load_preset(const std::string& name);

}  // namespace selchab
