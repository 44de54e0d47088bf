#include "selchab/presets.hpp"

#include <cstdlib>
#include <filesystem>

#include "json.hpp"
#include "selchab/error.hpp"
#include "selchab/report_io.hpp"

#ifndef SELCHAB_DEFAULT_DATA_DIR
#define SELCHAB_DEFAULT_DATA_DIR "data"
#endif

namespace selchab {

std::string data_dir() {
  if (const char* env = std::getenv("SELCHAB_DATA_DIR"); env && *env) return env;
  return SELCHAB_DEFAULT_DATA_DIR;
}

std::string data_path(const std::string& relative) {
  namespace fs = std::filesystem;
  const fs::path p(relative);
  if (p.is_absolute() || fs::exists(p)) return p.string();
  return (fs::path(data_dir()) / p).string();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out{"a3", "a5", "a7"};
  for (int g = 1; g <= 12; ++g) out.push_back("C" + std::to_string(g));
  return out;
}

Preset load_preset(const std::string& name) {
  if (name.size() > 1 && (name[0] == 'C' || name[0] == 'c') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    Preset p;
    p.name = "C" + name.substr(1);
    p.g = std::stoi(name.substr(1));
    if (p.g < 1) throw Error(ErrorCode::InvalidInput, "C_g needs g >= 1");
    p.h = IntPoly{1, 1};
    p.source = "family y^2 = x^(2g+1) + (x+1)^2";
    if (p.g == 2) p.selmer_file = "selmer/c2_derived.json";
    if (p.g == 1 || p.g == 3 || p.g == 5 || p.g == 11) p.selmer_file = "selmer/cg_trivial.json";
    return p;
  }
  const std::string path = data_path("presets/" + name + ".json");
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::InvalidInput, "unknown preset '" + name + "'");
  try {
    const auto j = nlohmann::json::parse(read_text_file(path));
    Preset p;
    p.name = j.at("name").get<std::string>();
    p.g = j.at("g").get<int>();
    p.h = parse_poly(j.at("h").get<std::string>());
    if (j.contains("f")) p.published_f = parse_poly(j["f"].get<std::string>());
    if (j.contains("disc")) {
      p.disc_sign = j["disc"].at("sign").get<std::string>();
      p.disc_factors = j["disc"].at("factors").get<std::vector<std::string>>();
    }
    if (j.contains("selmer")) p.selmer_file = j["selmer"].get<std::string>();
    if (j.contains("u_override")) p.u_file = j["u_override"].get<std::string>();
    p.source = j.value("source", std::string());
    if (p.published_f && !(*p.published_f == p.curve().f))
      throw Error(ErrorCode::InvalidInput, "preset " + name + ": published f disagrees with x^(2g+1) + h^2");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

}  // namespace selchab
