#include "cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "selchab/dynamics.hpp"
#include "selchab/error.hpp"
#include "selchab/presets.hpp"
#include "selchab/report_io.hpp"

namespace selchab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitInput = 3;
constexpr int kExitInconclusive = 2;

struct Common {
  std::string preset;
  int g = 0;
  std::string h;
  std::int64_t precision = 0;  // 0: environment or default
  std::string format = "text";
  std::size_t budget = 4096;
  int threads = 0;
  bool serial = false;
  std::string out_file;
};

void add_curve_options(CLI::App* sub, Common& c) {
  sub->set_help_flag("--help", "print this help");  // frees -h/--h for h(x)
  sub->add_option("--preset", c.preset, "a3, a5, a7 or C1..C12");
  sub->add_option("-g,--genus", c.g, "genus for an inline curve");
  sub->add_option("--h", c.h, "h(x) for an inline curve, e.g. \"x^2 + 2*x + 3\"");
}

void add_run_options(CLI::App* sub, Common& c) {
  sub->add_option("--precision", c.precision, "target 2-adic precision in bits (>= 8)");
  sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--budget", c.budget, "disk scan budget in evaluated classes");
  sub->add_option("--threads", c.threads, "OpenMP threads (0: runtime default)");
  sub->add_flag("--serial", c.serial, "use the serial reference kernels");
  sub->add_option("-o,--out", c.out_file, "also write the output to this file");
}

std::int64_t resolve_precision(const Common& c) {
  std::int64_t p = kDefaultPrecision;
  if (const char* env = std::getenv("SELCHAB_PRECISION"); env && *env) {
    try {
      p = std::stoll(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, std::string("SELCHAB_PRECISION is not an integer: ") + env);
    }
  }
  if (c.precision) p = c.precision;
  if (p < 8) throw Error(ErrorCode::InvalidInput, "precision must be at least 8 bits, got " + std::to_string(p));
  return p;
}

void apply_runtime(const Common& c) {
  set_default_policy(c.serial ? ExecPolicy::Serial : ExecPolicy::Parallel);
  if (c.threads > 0) set_thread_count(c.threads);
}

struct ResolvedCurve {
  std::string name;
  CurveSpec curve;
  std::optional<Preset> preset;
};

ResolvedCurve resolve_curve(const Common& c) {
  if (!c.preset.empty()) {
    if (c.g || !c.h.empty()) throw Error(ErrorCode::InvalidInput, "give either --preset or -g/--h, not both");
    Preset p = load_preset(c.preset);
    return {p.name, p.curve(), p};
  }
  if (c.g < 1 || c.h.empty()) throw Error(ErrorCode::InvalidInput, "need --preset, or both -g and --h");
  return {"", new_curve(c.g, parse_poly(c.h)), std::nullopt};
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DegreeTooLarge:
    case ErrorCode::EvenH0:
    case ErrorCode::NotSquarefreeMod2:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::OddDegree:
    case ErrorCode::NotMonic:
      return true;
    default:
      return false;
  }
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
  if (!c.out_file.empty()) {
    std::ofstream f(c.out_file);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + c.out_file);
    f << text;
  }
}

std::string matrix_text(const std::string& title, const std::vector<std::vector<std::string>>& m) {
  std::ostringstream os;
  os << title << "\n";
  for (const auto& row : m) {
    os << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
    os << "]\n";
  }
  return os.str();
}

std::string set_text(const std::vector<Gf2Vec>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + gf2_to_string(vs[i]);
  return s + "}";
}

// ---- verify-curve

struct VerifyArgs {
  Common common;
  std::string selmer;
  std::string u_override;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto rc = resolve_curve(a.common);
  std::string selmer_path = a.selmer;
  std::string u_path = a.u_override;
  if (selmer_path.empty()) {
    if (!rc.preset || !rc.preset->selmer_file)
      throw Error(ErrorCode::InvalidInput, "no --selmer file given and the curve has no default Selmer data");
    selmer_path = data_path(*rc.preset->selmer_file);
    if (u_path.empty() && rc.preset->u_file) u_path = data_path(*rc.preset->u_file);
  }
  SelmerInput s = load_selmer_file(selmer_path);
  if (!u_path.empty()) s.u_override = load_u_file(u_path);
  VerifyOptions opts;
  opts.lattice.precision = resolve_precision(a.common);
  opts.scan.budget = a.common.budget;
  opts.name = rc.name;
  const auto rep = verify_curve(rc.curve, s, opts);
  emit(a.common, out, a.common.format == "json" ? report_to_json(rep) : report_to_text(rep));
  return exit_code(rep.verdict);
}

// ---- log-image

struct LogImageArgs {
  Common common;
  std::string u_override;
};

int cmd_log_image(const LogImageArgs& a, std::ostream& out) {
  const auto rc = resolve_curve(a.common);
  LatticeOptions lo;
  lo.precision = resolve_precision(a.common);
  if (!a.u_override.empty()) lo.u_override = load_u_file(a.u_override);
  const auto lat = log_lattice(rc.curve, lo);
  const auto s = summarize_lattice(lat);
  std::vector<Gf2Vec> rows_mod2;
  for (std::size_t r = 0; r < lat.row_d.size(); ++r) rows_mod2.push_back(lattice_row_mod2(lat, r));
  if (a.common.format == "json") {
    json j = json::parse(lattice_summary_json(s));
    json m = json::array();
    for (const auto& v : rows_mod2) m.push_back(gf2_to_string(v));
    j["rows_mod2"] = m;
    emit(a.common, out, j.dump(2));
  } else {
    std::ostringstream os;
    os << "curve " << rc.curve.describe() << "\n";
    os << "precision " << s.precision << " (" << s.series_terms << " series terms, " << s.retries << " retries)\n";
    std::vector<std::vector<std::string>> L = s.L;
    for (std::size_t r = 0; r < L.size(); ++r)
      L[r].insert(L[r].begin(), "d=" + std::to_string(s.row_d[r]) + " x" + std::to_string(s.row_scale[r]));
    os << matrix_text("L (rows: generator d, scale)", L);
    os << matrix_text(s.u_overridden ? "U (override)" : "U (echelonizing)", s.U);
    os << matrix_text("L U", s.LU);
    os << "rows of L U mod 2\n";
    for (std::size_t r = 0; r < rows_mod2.size(); ++r)
      os << "  d=" << s.row_d[r] << " x" << s.row_scale[r] << "  " << gf2_to_string(rows_mod2[r]) << "\n";
    os << "lattice " << (s.certified ? "certified" : "NOT certified") << ": " << s.detail << "\n";
    emit(a.common, out, os.str());
  }
  return s.certified ? 0 : kExitInconclusive;
}

// ---- disk-scan

struct ScanArgs {
  Common common;
  std::string center = "both";
  std::string u_override;
};

int cmd_disk_scan(const ScanArgs& a, std::ostream& out) {
  const auto rc = resolve_curve(a.common);
  LatticeOptions lo;
  lo.precision = resolve_precision(a.common);
  std::string u_path = a.u_override;
  if (u_path.empty() && rc.preset && rc.preset->u_file) u_path = data_path(*rc.preset->u_file);
  if (!u_path.empty()) lo.u_override = load_u_file(u_path);
  const auto lat = log_lattice(rc.curve, lo);
  ScanOptions so;
  so.budget = a.common.budget;
  std::vector<DiskCenter> centers;
  if (a.center != "inf") centers.push_back(DiskCenter::P0);
  if (a.center != "p0") centers.push_back(DiskCenter::Infinity);
  json arr = json::array();
  std::ostringstream os;
  bool complete = true;
  for (auto c : centers) {
    const auto s = summarize_scan(disk_scan(lat, c, so));
    complete = complete && s.covers_disk;
    arr.push_back(json::parse(scan_summary_json(s)));
    os << "Z(" << s.center << ") = " << set_text(s.classes) << "\n";
    os << "  " << s.classes_evaluated << " classes evaluated, dominance from v(t) >= " << s.k0
       << (s.covers_disk ? ", cells cover the disk" : ", cells do NOT cover the disk") << "\n";
    for (const auto& cell : s.certificate) os << "  " << cell << "\n";
  }
  emit(a.common, out, a.common.format == "json" ? arr.dump(2) : os.str());
  return complete ? 0 : kExitInconclusive;
}

// ---- dynamics

struct DynArgs {
  Common common;
  std::vector<std::string> poly;  // kind, n
  std::optional<long> eval;
  int reduce = 0;
  int chain = 0;
  std::vector<int> resultant;
  std::vector<int> three_adic;
  std::string facts;
};

int cmd_dynamics(const DynArgs& a, std::ostream& out) {
  json j;
  std::ostringstream os;
  bool did = false;
  if (!a.poly.empty()) {
    if (a.poly.size() != 2) throw Error(ErrorCode::InvalidInput, "--poly takes KIND N");
    int n = 0;
    try {
      n = std::stoi(a.poly[1]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad index '" + a.poly[1] + "'");
    }
    const auto p = iter_poly(parse_iter_kind(a.poly[0]), n);
    const std::string name = to_string(p.kind) + "_" + std::to_string(n);
    j["poly"] = {{"name", name}, {"degree", p.poly.degree()}, {"poly", p.poly.to_string("c")}};
    if (a.eval) {
      const auto v = p.poly.eval(*a.eval);
      j["poly"]["eval"] = {{"c", *a.eval}, {"value", v.get_str()}};
      os << name << "(" << *a.eval << ") = " << v << "\n";
    } else {
      os << name << " = " << p.poly.to_string("c") << "\n";
    }
    did = true;
  }
  if (a.reduce) {
    const auto plan = reduce_square_question(a.reduce);
    json cases = json::array();
    os << "A_" << plan.n << "(c) square reduces to:";
    for (const auto& c : plan.cases) {
      cases.push_back({{"target", c.target()}, {"rationale", c.rationale}});
      os << " " << c.target();
    }
    if (plan.cases.empty()) os << " (nothing smaller)";
    os << "\n  " << plan.conclusion << "\n";
    j["reduce"] = {{"n", plan.n}, {"cases", cases}, {"conclusion", plan.conclusion}};
    did = true;
  }
  if (a.chain) {
    const auto facts = load_facts(a.facts.empty() ? data_path("facts.json") : a.facts);
    const auto res = irreducibility_chain(a.chain, facts);
    json links = json::array();
    os << "f_c^" << res.n << " irreducible given f_c^2 irreducible: " << to_string(res.status) << "\n";
    for (const auto& l : res.links) {
      links.push_back({{"n", l.n}, {"status", to_string(l.status)}, {"route", l.route}});
      os << "  link " << l.n << ": " << to_string(l.status) << " (" << l.route << ")\n";
    }
    j["chain"] = {{"n", res.n}, {"status", to_string(res.status)}, {"links", links}};
    did = true;
  }
  if (!a.resultant.empty()) {
    if (a.resultant.size() != 2) throw Error(ErrorCode::InvalidInput, "--resultant takes M N");
    const int r = rigid_divisibility_check(a.resultant[0], a.resultant[1]);
    os << "Res(B_" << a.resultant[0] << ", B_" << a.resultant[1] << ") = " << r << "\n";
    j["resultant"] = {{"m", a.resultant[0]}, {"n", a.resultant[1]}, {"value", r}};
    did = true;
  }
  if (!a.three_adic.empty()) {
    if (a.three_adic.size() != 2) throw Error(ErrorCode::InvalidInput, "--three-adic takes M N");
    const auto cert = three_adic_square_certificate(cofactor_B(a.three_adic[0], a.three_adic[1]));
    os << "A_" << a.three_adic[1] << "/A_" << a.three_adic[0] << " mod 3 at 0,1,2: " << cert.residues[0] << ","
       << cert.residues[1] << "," << cert.residues[2] << " -> " << (cert.holds ? "3-adic square" : "no certificate")
       << "\n";
    j["three_adic"] = {{"m", a.three_adic[0]},
                       {"n", a.three_adic[1]},
                       {"residues", {cert.residues[0], cert.residues[1], cert.residues[2]}},
                       {"holds", cert.holds}};
    did = true;
  }
  if (!did) throw Error(ErrorCode::InvalidInput, "dynamics needs one of --poly, --reduce, --chain, --resultant, --three-adic");
  emit(a.common, out, a.common.format == "json" ? j.dump(2) : os.str());
  return 0;
}

// ---- survey

struct SurveyArgs {
  Common common;
  std::string family;
  int gmin = 1;
  int gmax = 6;
  std::string list;  // file with lines "g; h" or "g; h; selmer.json"
  std::vector<int> box;  // g, bound
  std::size_t limit = 0;
  int jobs = 0;
};

struct SurveyItem {
  std::string name;
  int g = 0;
  std::string h;
  std::string selmer;  // path or empty
};

struct SurveyRow {
  SurveyItem item;
  bool ok = false;
  std::size_t m = 0, dim_h2 = 0, delta2 = 0;
  std::string z_p0 = "-", z_inf = "-";
  std::string selmer_dim = "requires external data";
  std::string verdict;
  std::string diagnostics;
};

std::vector<SurveyItem> survey_items(const SurveyArgs& a) {
  std::vector<SurveyItem> items;
  if (!a.family.empty()) {
    if (a.family != "C") throw Error(ErrorCode::InvalidInput, "only the family C is known");
    for (int g = a.gmin; g <= a.gmax; ++g) {
      const auto p = load_preset("C" + std::to_string(g));
      items.push_back({p.name, g, p.h.to_string(), p.selmer_file ? data_path(*p.selmer_file) : ""});
    }
  }
  if (!a.list.empty()) {
    std::istringstream in(read_text_file(a.list));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> parts;
      std::stringstream ls(line);
      for (std::string p; std::getline(ls, p, ';');) parts.push_back(p);
      if (parts.size() < 2) throw Error(ErrorCode::InvalidInput, "survey line needs 'g; h': " + line);
      SurveyItem it;
      try {
        it.g = std::stoi(parts[0]);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "bad genus in survey line: " + line);
      }
      it.h = parts[1];
      if (parts.size() > 2) {
        std::string s = parts[2];
        s.erase(0, s.find_first_not_of(' '));
        it.selmer = s;
      }
      items.push_back(it);
    }
  }
  if (!a.box.empty()) {
    if (a.box.size() != 2) throw Error(ErrorCode::InvalidInput, "--box takes G BOUND");
    const int g = a.box[0], b = a.box[1];
    std::vector<long> c(g + 1, -b);
    for (;;) {
      // h(0) odd, h(1) even, positive leading coefficient
      long sum = 0;
      int deg = g;
      while (deg > 0 && c[deg] == 0) --deg;
      for (long x : c) sum += x;
      if (c[0] % 2 && sum % 2 == 0 && c[deg] > 0) {
        IntPoly h(std::vector<mpz_class>(c.begin(), c.end()));
        items.push_back({"", g, h.to_string(), ""});
        if (a.limit && items.size() >= a.limit) break;
      }
      int i = 0;
      while (i <= g && c[i] == b) c[i++] = -b;
      if (i > g) break;
      ++c[i];
    }
  }
  return items;
}

SurveyRow survey_one(const SurveyItem& it, std::int64_t precision, std::size_t budget) {
  SurveyRow row;
  row.item = it;
  try {
    const auto curve = new_curve(it.g, parse_poly(it.h));
    const auto e = build_etale(curve.f);
    row.m = e.m();
    row.dim_h2 = e.dim_h2();
    row.delta2 = e.delta2_basis.size();
    if (!it.selmer.empty()) {
      const auto s = load_selmer_file(it.selmer);
      VerifyOptions opts;
      opts.lattice.precision = precision;
      opts.scan.budget = budget;
      const auto rep = verify_curve(curve, s, opts);
      row.selmer_dim = std::to_string(s.mode == SelmerMode::Trivial ? 0 : (s.declared_dimension ? *s.declared_dimension : s.vectors.size() + s.unit_reps.size()));
      if (rep.z_p0) row.z_p0 = std::to_string(rep.z_p0->classes.size());
      if (rep.z_inf) row.z_inf = std::to_string(rep.z_inf->classes.size());
      row.verdict = rep.verdict == Verdict::Success ? "+" : rep.verdict == Verdict::Failure ? "-" : "?";
      if (rep.verdict != Verdict::Success) row.diagnostics = rep.reason;
    } else {
      LatticeOptions lo;
      lo.precision = precision;
      const auto lat = log_lattice(curve, lo);
      ScanOptions so;
      so.budget = budget;
      so.policy = ExecPolicy::Serial;
      row.z_p0 = std::to_string(disk_scan(lat, DiskCenter::P0, so).classes.size());
      row.z_inf = std::to_string(disk_scan(lat, DiskCenter::Infinity, so).classes.size());
      row.verdict = "n/a";
    }
    row.ok = true;
  } catch (const std::exception& ex) {
    row.diagnostics = ex.what();
    row.verdict = "error";
  }
  return row;
}

int cmd_survey(const SurveyArgs& a, std::ostream& out) {
  const auto items = survey_items(a);
  if (items.empty()) throw Error(ErrorCode::InvalidInput, "survey has no curves (use --family, --list or --box)");
  const auto prec = resolve_precision(a.common);
  std::vector<SurveyRow> rows(items.size());
  const int jobs = a.jobs > 0 ? a.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::size_t i = 0; i < items.size(); ++i) rows[i] = survey_one(items[i], prec, a.common.budget);
  if (a.common.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"name", r.item.name},
                     {"g", r.item.g},
                     {"h", r.item.h},
                     {"m", r.m},
                     {"dim_H2", r.dim_h2},
                     {"delta2_dim", r.delta2},
                     {"Z_P0", r.z_p0},
                     {"Z_inf", r.z_inf},
                     {"selmer_dim", r.selmer_dim},
                     {"verdict", r.verdict},
                     {"diagnostics", r.diagnostics}});
    emit(a.common, out, arr.dump(2));
  } else {
    std::ostringstream os;
    os << "name\tg\th\tm\tdimH2\tdelta2\t#Z(P0)\t#Z(inf)\tdimSel\tverdict\tdiagnostics\n";
    for (const auto& r : rows)
      os << r.item.name << "\t" << r.item.g << "\t" << r.item.h << "\t" << r.m << "\t" << r.dim_h2 << "\t" << r.delta2
         << "\t" << r.z_p0 << "\t" << r.z_inf << "\t" << r.selmer_dim << "\t" << r.verdict << "\t" << r.diagnostics
         << "\n";
    emit(a.common, out, os.str());
  }
  for (const auto& r : rows)
    if (!r.ok) return kExitInconclusive;
  return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selmer group Chabauty for y^2 = x^(2g+1) + h(x)^2, and the A_n dynamics layer"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-curve", "run the full verification and print a report");
  add_curve_options(verify, va.common);
  add_run_options(verify, va.common);
  verify->add_option("--selmer", va.selmer, "Selmer input file (JSON)");
  verify->add_option("--u-override", va.u_override, "replacement echelonizing matrix U (JSON)");

  LogImageArgs la;
  auto* logimg = app.add_subcommand("log-image", "print the log lattice L, U and L U");
  add_curve_options(logimg, la.common);
  add_run_options(logimg, la.common);
  logimg->add_option("--u-override", la.u_override, "replacement echelonizing matrix U (JSON)");

  ScanArgs sa;
  auto* scan = app.add_subcommand("disk-scan", "compute Z(P0) and Z(inf) with certificates");
  add_curve_options(scan, sa.common);
  add_run_options(scan, sa.common);
  scan->add_option("--center", sa.center, "p0, inf or both")->check(CLI::IsMember({"p0", "inf", "both"}));
  scan->add_option("--u-override", sa.u_override, "replacement echelonizing matrix U (JSON)");

  DynArgs da;
  auto* dyn = app.add_subcommand("dynamics", "A_n, a_n, B_n and the square-question chain");
  add_run_options(dyn, da.common);
  dyn->add_option("--poly", da.poly, "KIND N with KIND in {A, a, B}")->expected(2);
  dyn->add_option("--eval", da.eval, "evaluate the --poly polynomial at this integer");
  dyn->add_option("--reduce", da.reduce, "reduce 'A_n(c) is a square' to smaller indices");
  dyn->add_option("--chain", da.chain, "irreducibility chain status for f_c^n");
  dyn->add_option("--resultant", da.resultant, "M N: Res(B_M, B_N)")->expected(2);
  dyn->add_option("--three-adic", da.three_adic, "M N: 3-adic square certificate for A_N / A_M")->expected(2);
  dyn->add_option("--facts", da.facts, "facts database (default: data/facts.json)");

  SurveyArgs ua;
  auto* survey = app.add_subcommand("survey", "local invariants (and verdicts with Selmer data) for many curves");
  add_run_options(survey, ua.common);
  survey->add_option("--family", ua.family, "C: y^2 = x^(2g+1) + (x+1)^2");
  survey->add_option("--gmin", ua.gmin, "smallest genus for --family");
  survey->add_option("--gmax", ua.gmax, "largest genus for --family");
  survey->add_option("--list", ua.list, "file of lines 'g; h' or 'g; h; selmer.json'");
  survey->add_option("--box", ua.box, "G BOUND: all h of degree <= G with |coefficients| <= BOUND")->expected(2);
  survey->add_option("--limit", ua.limit, "stop --box enumeration after this many curves");
  survey->add_option("--jobs", ua.jobs, "curves processed in parallel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*verify) return apply_runtime(va.common), cmd_verify(va, out);
    if (*logimg) return apply_runtime(la.common), cmd_log_image(la, out);
    if (*scan) return apply_runtime(sa.common), cmd_disk_scan(sa, out);
    if (*dyn) return apply_runtime(da.common), cmd_dynamics(da, out);
    if (*survey) return apply_runtime(ua.common), cmd_survey(ua, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace selchab::cli
