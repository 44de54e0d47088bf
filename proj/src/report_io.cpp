#include "selchab/report_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "selchab/error.hpp"

namespace selchab {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Gf2Vec& v) {
  json a = json::array();
  for (auto b : v) a.push_back(static_cast<int>(b));
  return a;
}

Gf2Vec vec_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array of bits");
  Gf2Vec v;
  for (const auto& b : j) {
    const int x = b.get<int>();
    if (x != 0 && x != 1) throw Error(ErrorCode::InvalidInput, "bit vector entries must be 0 or 1");
    v.push_back(static_cast<std::uint8_t>(x));
  }
  return v;
}

json vecs_json(const std::vector<Gf2Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

std::vector<Gf2Vec> vecs_from(const json& j) {
  std::vector<Gf2Vec> out;
  for (const auto& v : j) out.push_back(vec_from(v));
  return out;
}

template <class T>
json opt_json(const std::optional<T>& o) {
  return o ? json(*o) : json(nullptr);
}

json lattice_json(const LatticeSummary& s) {
  json j;
  j["precision"] = s.precision;
  j["series_terms"] = s.series_terms;
  j["retries"] = s.retries;
  j["u_overridden"] = s.u_overridden;
  j["certified"] = s.certified;
  j["detail"] = s.detail;
  j["row_d"] = s.row_d;
  j["row_scale"] = s.row_scale;
  j["L"] = s.L;
  j["U"] = s.U;
  j["LU"] = s.LU;
  return j;
}

LatticeSummary lattice_from(const json& j) {
  LatticeSummary s;
  s.precision = j.at("precision").get<std::int64_t>();
  s.series_terms = j.at("series_terms").get<std::size_t>();
  s.retries = j.at("retries").get<int>();
  s.u_overridden = j.at("u_overridden").get<bool>();
  s.certified = j.at("certified").get<bool>();
  s.detail = j.at("detail").get<std::string>();
  s.row_d = j.at("row_d").get<std::vector<int>>();
  s.row_scale = j.at("row_scale").get<std::vector<int>>();
  s.L = j.at("L").get<std::vector<std::vector<std::string>>>();
  s.U = j.at("U").get<std::vector<std::vector<std::string>>>();
  s.LU = j.at("LU").get<std::vector<std::vector<std::string>>>();
  return s;
}

json scan_json(const ScanSummary& s) {
  json j;
  j["center"] = s.center;
  j["classes"] = vecs_json(s.classes);
  j["k0"] = s.k0;
  j["classes_evaluated"] = s.classes_evaluated;
  j["covers_disk"] = s.covers_disk;
  j["certificate"] = s.certificate;
  return j;
}

ScanSummary scan_from(const json& j) {
  ScanSummary s;
  s.center = j.at("center").get<std::string>();
  s.classes = vecs_from(j.at("classes"));
  s.k0 = j.at("k0").get<std::int64_t>();
  s.classes_evaluated = j.at("classes_evaluated").get<std::size_t>();
  s.covers_disk = j.at("covers_disk").get<bool>();
  s.certificate = j.at("certificate").get<std::vector<std::string>>();
  return s;
}

UnitDiskStatus unit_status_from(const std::string& s) {
  for (auto st : {UnitDiskStatus::NotApplicable, UnitDiskStatus::No2adicPoints, UnitDiskStatus::Checked,
                  UnitDiskStatus::CheckedViaF2g, UnitDiskStatus::Skipped})
    if (to_string(st) == s) return st;
  throw Error(ErrorCode::InvalidInput, "unknown unit disk status '" + s + "'");
}

DyadicMatrix matrix_from(const json& rows) {
  std::vector<std::vector<std::string>> m;
  for (const auto& r : rows) {
    std::vector<std::string> row;
    for (const auto& x : r) row.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    m.push_back(row);
  }
  return DyadicMatrix::from_strings(m);
}

json parse_or_throw(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, what + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string lattice_summary_json(const LatticeSummary& s, int indent) { return lattice_json(s).dump(indent); }

std::string scan_summary_json(const ScanSummary& s, int indent) { return scan_json(s).dump(indent); }

SelmerInput selmer_from_json(const std::string& text) {
  const json j = parse_or_throw(text, "Selmer input");
  try {
    SelmerInput s;
    s.mode = parse_selmer_mode(j.at("mode").get<std::string>());
    s.provenance = j.value("provenance", std::string());
    s.exact = j.value("exact", true);
    if (j.contains("dimension") && !j["dimension"].is_null()) s.declared_dimension = j["dimension"].get<std::size_t>();
    const json gens = j.value("generators", json::array());
    switch (s.mode) {
      case SelmerMode::Trivial:
        if (!gens.empty()) throw Error(ErrorCode::InvalidInput, "trivial mode takes no generators");
        break;
      case SelmerMode::UnitRepresentatives:
        for (const auto& g : gens) s.unit_reps.push_back(parse_poly(g.get<std::string>(), {"theta", "x"}));
        break;
      case SelmerMode::Delta2Coordinates:
      case SelmerMode::F2gVectorsOverride:
        s.vectors = vecs_from(gens);
        break;
    }
    if (j.contains("u_override") && !j["u_override"].is_null()) s.u_override = matrix_from(j["u_override"]);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("Selmer input: ") + e.what());
  }
}

std::string selmer_to_json(const SelmerInput& s) {
  json j;
  j["mode"] = to_string(s.mode);
  json gens = json::array();
  if (s.mode == SelmerMode::UnitRepresentatives) {
    for (const auto& u : s.unit_reps) gens.push_back(u.to_string("theta"));
  } else {
    gens = vecs_json(s.vectors);
  }
  j["generators"] = gens;
  if (s.u_override) j["u_override"] = s.u_override->to_strings();
  if (s.declared_dimension) j["dimension"] = *s.declared_dimension;
  j["exact"] = s.exact;
  j["provenance"] = s.provenance;
  return j.dump(2);
}

SelmerInput load_selmer_file(const std::string& path) {
  try {
    return selmer_from_json(read_text_file(path));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

DyadicMatrix u_matrix_from_json(const std::string& text) {
  const json j = parse_or_throw(text, "U matrix");
  try {
    return matrix_from(j.is_object() ? j.at("u") : j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("U matrix: ") + e.what());
  }
}

DyadicMatrix load_u_file(const std::string& path) {
  try {
    return u_matrix_from_json(read_text_file(path));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

std::string report_to_json(const VerificationReport& r, int indent) {
  json j;
  j["curve"] = {{"name", r.name}, {"g", r.g}, {"h", r.h}, {"f", r.f}};
  json laws = json::array();
  for (const auto& l : r.laws)
    laws.push_back({{"name", l.name},
                    {"law", l.law},
                    {"checked", l.coefficients_checked},
                    {"first_violation", opt_json(l.first_violation)}});
  j["structure"] = {{"ok", r.structure_ok},
                    {"odd_points", r.odd_points},
                    {"factor_degrees", r.factor_degrees},
                    {"dim_h2", r.dim_h2},
                    {"delta2_dim", r.delta2_dim},
                    {"I", r.I_set},
                    {"laws", laws}};
  j["selmer"] = {{"mode", r.selmer_mode},
                 {"provenance", r.selmer_provenance},
                 {"reproduction_mode", r.reproduction_mode},
                 {"H2", vecs_json(r.selmer_H2)},
                 {"F2g", vecs_json(r.selmer_F2g)},
                 {"notes", r.selmer_notes}};
  j["lattice"] = r.lattice ? lattice_json(*r.lattice) : json(nullptr);
  j["unit_disk"] = {{"status", to_string(r.unit_disk.status)},
                    {"x0_mod8", r.unit_disk.x0_mod8},
                    {"x0_class", vec_json(r.unit_disk.x0_class)},
                    {"x0_F2g", r.unit_disk.x0_f2g ? vec_json(*r.unit_disk.x0_f2g) : json(nullptr)},
                    {"member", r.unit_disk.member},
                    {"passes", r.unit_disk.passes},
                    {"note", r.unit_disk.note}};
  j["Z_P0"] = r.z_p0 ? scan_json(*r.z_p0) : json(nullptr);
  j["Z_inf"] = r.z_inf ? scan_json(*r.z_inf) : json(nullptr);
  json regimes = json::array();
  for (const auto& g : r.regimes) regimes.push_back({{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
  j["regimes"] = regimes;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["witnesses"] = vecs_json(r.witnesses);
  j["notes"] = r.notes;
  return j.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
  const json j = parse_or_throw(text, "report");
  try {
    VerificationReport r;
    const auto& c = j.at("curve");
    r.name = c.at("name").get<std::string>();
    r.g = c.at("g").get<int>();
    r.h = c.at("h").get<std::string>();
    r.f = c.at("f").get<std::string>();
    const auto& s = j.at("structure");
    r.structure_ok = s.at("ok").get<bool>();
    r.odd_points = s.at("odd_points").get<std::vector<std::string>>();
    r.factor_degrees = s.at("factor_degrees").get<std::vector<int>>();
    r.dim_h2 = s.at("dim_h2").get<std::size_t>();
    r.delta2_dim = s.at("delta2_dim").get<std::size_t>();
    r.I_set = s.at("I").get<std::vector<int>>();
    for (const auto& l : s.at("laws")) {
      LawCheck lc;
      lc.name = l.at("name").get<std::string>();
      lc.law = l.at("law").get<std::string>();
      lc.coefficients_checked = l.at("checked").get<std::size_t>();
      if (!l.at("first_violation").is_null()) lc.first_violation = l["first_violation"].get<std::size_t>();
      r.laws.push_back(lc);
    }
    const auto& sel = j.at("selmer");
    r.selmer_mode = sel.at("mode").get<std::string>();
    r.selmer_provenance = sel.at("provenance").get<std::string>();
    r.reproduction_mode = sel.at("reproduction_mode").get<bool>();
    r.selmer_H2 = vecs_from(sel.at("H2"));
    r.selmer_F2g = vecs_from(sel.at("F2g"));
    r.selmer_notes = sel.at("notes").get<std::vector<std::string>>();
    if (!j.at("lattice").is_null()) r.lattice = lattice_from(j["lattice"]);
    const auto& u = j.at("unit_disk");
    r.unit_disk.status = unit_status_from(u.at("status").get<std::string>());
    r.unit_disk.x0_mod8 = u.at("x0_mod8").get<int>();
    r.unit_disk.x0_class = vec_from(u.at("x0_class"));
    if (!u.at("x0_F2g").is_null()) r.unit_disk.x0_f2g = vec_from(u["x0_F2g"]);
    r.unit_disk.member = u.at("member").get<bool>();
    r.unit_disk.passes = u.at("passes").get<bool>();
    r.unit_disk.note = u.at("note").get<std::string>();
    if (!j.at("Z_P0").is_null()) r.z_p0 = scan_from(j["Z_P0"]);
    if (!j.at("Z_inf").is_null()) r.z_inf = scan_from(j["Z_inf"]);
    for (const auto& g : j.at("regimes"))
      r.regimes.push_back({g.at("name").get<std::string>(), g.at("passed").get<bool>(), g.at("detail").get<std::string>()});
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.reason = j.at("reason").get<std::string>();
    r.witnesses = vecs_from(j.at("witnesses"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("report: ") + e.what());
  }
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  const auto set = [](const std::vector<Gf2Vec>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + gf2_to_string(vs[i]);
    return s + "}";
  };
  os << "curve      " << (r.name.empty() ? "" : r.name + ": ") << "g = " << r.g << ", h = " << r.h << "\n";
  os << "structure  " << (r.structure_ok ? "ok" : "FAILED") << ", factor degrees (";
  for (std::size_t i = 0; i < r.factor_degrees.size(); ++i) os << (i ? "," : "") << r.factor_degrees[i];
  os << "), dim H2 = " << r.dim_h2 << ", delta2 image dim = " << r.delta2_dim << ", I = {";
  for (std::size_t i = 0; i < r.I_set.size(); ++i) os << (i ? "," : "") << r.I_set[i];
  os << "}\n";
  for (const auto& l : r.laws)
    os << "law        " << l.name << ": " << (l.holds() ? "holds" : "VIOLATED") << " on " << l.coefficients_checked
       << " coefficients\n";
  os << "selmer     " << r.selmer_mode << (r.reproduction_mode ? " (reproduction)" : "") << ", F2^g image "
     << set(r.selmer_F2g) << "\n";
  if (r.lattice)
    os << "lattice    precision " << r.lattice->precision << ", " << r.lattice->series_terms << " terms, "
       << (r.lattice->u_overridden ? "U override" : "echelonized U") << ", "
       << (r.lattice->certified ? "certified" : "NOT certified") << "\n";
  os << "unit disk  " << to_string(r.unit_disk.status);
  if (r.unit_disk.status == UnitDiskStatus::Checked || r.unit_disk.status == UnitDiskStatus::CheckedViaF2g)
    os << ", x0 = " << r.unit_disk.x0_mod8 << " mod 8, " << (r.unit_disk.member ? "in" : "not in") << " Selmer image";
  os << "\n";
  if (r.z_p0) os << "Z(P0)      " << set(r.z_p0->classes) << (r.z_p0->covers_disk ? "" : " (incomplete)") << "\n";
  if (r.z_inf) os << "Z(inf)     " << set(r.z_inf->classes) << (r.z_inf->covers_disk ? "" : " (incomplete)") << "\n";
  os << "verdict    " << to_string(r.verdict) << ": " << r.reason << "\n";
  if (!r.witnesses.empty()) os << "witness    " << set(r.witnesses) << "\n";
  for (const auto& n : r.notes) os << "note       " << n << "\n";
  return os.str();
}

}  // namespace selchab
