#include "selchab/verifier.hpp"

#include <algorithm>
#include <cctype>

#include "selchab/error.hpp"

namespace selchab {

namespace {

bool mentions_grh(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  return u.find("GRH") != std::string::npos;
}

}  // namespace

ScanSummary summarize_scan(const DiskScanResult& r) {
  ScanSummary s;
  s.center = to_string(r.center);
  s.classes = r.classes;
  for (const auto& c : r.certificate) s.certificate.push_back(c.describe());
  s.k0 = r.k0;
  s.classes_evaluated = r.classes_evaluated;
  s.covers_disk = r.covers_disk;
  return s;
}

LatticeSummary summarize_lattice(const LogLattice& lat) {
  LatticeSummary s;
  s.L = lat.L.to_strings();
  s.U = lat.U.to_strings();
  s.LU = lat.LU.to_strings();
  s.row_d = lat.row_d;
  s.row_scale = lat.row_scale;
  s.precision = lat.precision;
  s.series_terms = lat.series_terms;
  s.retries = lat.retries;
  s.u_overridden = lat.u_overridden;
  s.certified = lat.certificate.ok;
  s.detail = lat.certificate.detail;
  return s;
}

namespace {

// x0 - theta as a polynomial in theta.
IntPoly unit_disk_element(int x0) { return IntPoly{x0, -1}; }

}  // namespace

std::string to_string(SelmerMode m) {
  switch (m) {
    case SelmerMode::Trivial: return "trivial";
    case SelmerMode::UnitRepresentatives: return "unit_reps";
    case SelmerMode::Delta2Coordinates: return "delta2_coords";
    case SelmerMode::F2gVectorsOverride: return "f2g_override";
  }
  return "trivial";
}

SelmerMode parse_selmer_mode(const std::string& s) {
  if (s == "trivial") return SelmerMode::Trivial;
  if (s == "unit_reps") return SelmerMode::UnitRepresentatives;
  if (s == "delta2_coords") return SelmerMode::Delta2Coordinates;
  if (s == "f2g_override") return SelmerMode::F2gVectorsOverride;
  throw Error(ErrorCode::InvalidInput, "unknown Selmer mode '" + s + "'");
}

std::string to_string(UnitDiskStatus s) {
  switch (s) {
    case UnitDiskStatus::NotApplicable: return "not_applicable";
    case UnitDiskStatus::No2adicPoints: return "no_2adic_points";
    case UnitDiskStatus::Checked: return "checked";
    case UnitDiskStatus::CheckedViaF2g: return "checked_via_f2g";
    case UnitDiskStatus::Skipped: return "skipped";
  }
  return "skipped";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Success: return "Success";
    case Verdict::Failure: return "Failure";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "Success") return Verdict::Success;
  if (s == "Failure") return Verdict::Failure;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw Error(ErrorCode::InvalidInput, "unknown verdict '" + s + "'");
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Success: return 0;
    case Verdict::Failure: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

bool in_span(const std::vector<Gf2Vec>& basis, const Gf2Vec& v) {
  Gf2Basis b(v.size());
  for (const auto& x : basis) b.insert(x);
  return b.contains(v);
}

std::vector<SquareClass> selmer_to_H2(const EtaleData& e, const SelmerInput& s) {
  std::vector<SquareClass> out;
  switch (s.mode) {
    case SelmerMode::Trivial:
      return out;
    case SelmerMode::UnitRepresentatives:
      for (const auto& u : s.unit_reps) out.push_back(square_class_coords(e, u));
      break;
    case SelmerMode::Delta2Coordinates:
      for (const auto& v : s.vectors) {
        if (v.size() != e.delta2_basis.size())
          throw Error(ErrorCode::InvalidInput, "delta2 coordinate vector has length " + std::to_string(v.size()) +
                                                   ", expected " + std::to_string(e.delta2_basis.size()));
        out.push_back(delta2_combination(e, v));
      }
      break;
    case SelmerMode::F2gVectorsOverride:
      throw Error(ErrorCode::InvalidInput, "F_2^g vectors have no H_2 classes");
  }
  const std::size_t declared = s.declared_dimension.value_or(out.size());
  const std::size_t rank = gf2_rank(out, e.dim_h2());
  if (rank < declared)
    throw Error(ErrorCode::RankDrop, "Selmer generators span dimension " + std::to_string(rank) + " in H_2, declared " +
                                         std::to_string(declared));
  return out;
}

Gf2Vec delta2_class_to_F2g(const EtaleData& e, const LogLattice& lat, const SquareClass& c) {
  const auto coeffs = delta2_coordinates(e, c);
  if (!coeffs) throw Error(ErrorCode::NotInLocalImage, "class " + gf2_to_string(c) + " is not in the local image");
  Gf2Vec v(static_cast<std::size_t>(lat.g));
  for (std::size_t i = 0; i < coeffs->size(); ++i) {
    if (!(*coeffs)[i]) continue;
    const Delta2Generator& gen = e.delta2_basis[i];
    bool found = false;
    for (std::size_t r = 0; r < lat.row_d.size(); ++r)
      if (lat.row_d[r] == gen.d && lat.row_scale[r] == gen.scale) {
        v = gf2_add(v, lattice_row_mod2(lat, r));
        found = true;
        break;
      }
    if (!found) throw Error(ErrorCode::InternalInconsistency, "no log row for generator d = " + std::to_string(gen.d));
  }
  return v;
}

F2gImage selmer_to_F2g(const EtaleData& e, const LogLattice& lat, const std::vector<SquareClass>& classes,
                       bool exact) {
  F2gImage img;
  Gf2Basis span(static_cast<std::size_t>(lat.g));
  for (const auto& c : classes) {
    Gf2Vec v;
    try {
      v = delta2_class_to_F2g(e, lat, c);
    } catch (const Error& err) {
      if (exact || err.code() != ErrorCode::NotInLocalImage) throw;
      img.notes.push_back("dropped " + gf2_to_string(c) + ": outside the local image");
      continue;
    }
    if (span.insert(v)) img.basis.push_back(v);
  }
  return img;
}

std::optional<int> unit_disk_x0(const CurveSpec& c) {
  if (!c.unit_disk_supported) return std::nullopt;
  const mpz_class h1 = c.h.eval(1);
  mpz_class x0 = (1 - h1 * h1) % 8;
  if (x0 < 0) x0 += 8;
  int r = static_cast<int>(x0.get_si());
  if (r > 4) r -= 8;
  // Certified 2-adic points with odd x: f(x) = 4^k u with u = 1 mod 8, x < 2^10.
  const std::int64_t bits = 10;
  bool any = false;
  for (long x = 1; x < (1L << bits); x += 2) {
    const mpz_class fx = c.f.eval(x);
    if (sgn(fx) == 0) continue;
    const std::int64_t v = v2(fx);
    if (v % 2 != 0) continue;
    mpz_class u = fx >> static_cast<mp_bitcnt_t>(v);
    if (mpz_fdiv_ui(u.get_mpz_t(), 8) != 1) continue;
    any = true;
    if ((x - r) % 8 != 0)
      throw Error(ErrorCode::InternalInconsistency,
                  "2-adic point with x = " + std::to_string(x) + " is not congruent to " + std::to_string(r) + " mod 8");
  }
  if (!any) return std::nullopt;
  return r;
}

UnitDiskResult unit_disk_check(const CurveSpec& c, const EtaleData& e, const std::vector<SquareClass>& selmer_H2) {
  UnitDiskResult r;
  if (!c.unit_disk_supported) {
    r.status = UnitDiskStatus::NotApplicable;
    r.passes = false;
    r.note = "h(1) is odd; the unit disk is not handled";
    return r;
  }
  const auto x0 = unit_disk_x0(c);
  if (!x0) {
    r.status = UnitDiskStatus::No2adicPoints;
    r.passes = true;
    r.note = "no 2-adic points with v2(x) = 0";
    return r;
  }
  r.x0_mod8 = *x0;
  r.x0_class = square_class_coords(e, unit_disk_element(*x0));
  r.member = in_span(selmer_H2, r.x0_class);
  r.status = UnitDiskStatus::Checked;
  r.passes = !r.member;
  return r;
}

UnitDiskResult unit_disk_check_f2g(const CurveSpec& c, const EtaleData& e, const LogLattice& lat,
                                   const std::vector<Gf2Vec>& selmer_F2g) {
  UnitDiskResult r = unit_disk_check(c, e, {});
  if (r.status != UnitDiskStatus::Checked) return r;
  // A Selmer class maps into the F_2^g span, so an image outside it is decisive.
  r.x0_f2g = delta2_class_to_F2g(e, lat, r.x0_class);
  r.member = in_span(selmer_F2g, *r.x0_f2g);
  r.status = UnitDiskStatus::CheckedViaF2g;
  r.passes = !r.member;
  if (r.member) r.note = "image of x0 - theta lies in the F_2^g span; H_2 data needed to decide";
  return r;
}

VerificationReport verify_curve(const CurveSpec& c, const SelmerInput& s, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.g = c.g;
  rep.h = c.h.to_string();
  rep.f = c.f.to_string();
  rep.name = opts.name;
  rep.selmer_mode = to_string(s.mode);
  rep.selmer_provenance = s.provenance;
  rep.reproduction_mode = s.mode == SelmerMode::F2gVectorsOverride;
  rep.notes.push_back("conditional on the supplied Selmer data" +
                      (s.provenance.empty() ? std::string() : " (" + s.provenance + ")"));
  if (mentions_grh(s.provenance)) rep.notes.push_back("conditional on GRH");
  if (rep.reproduction_mode) rep.notes.push_back("reproduction mode: F_2^g vectors taken as given");
  try {
    const StructuralReport st = structural_checks(c);
    rep.structure_ok = st.ok;
    for (const auto& p : st.odd_points) rep.odd_points.push_back(p.to_string());
    const EtaleData e = build_etale(c.f);
    rep.factor_degrees = e.factor_degrees();
    rep.dim_h2 = e.dim_h2();
    rep.delta2_dim = e.delta2_basis.size();
    rep.I_set = e.I_set;
    const std::size_t law_terms = opts.law_terms ? opts.law_terms : default_nterms(c.g, opts.lattice.precision);
    rep.laws = check_valuation_laws(c, law_terms, opts.lattice.precision + 32, opts.lattice.policy);
    for (const auto& l : rep.laws)
      if (!l.holds())
        throw Error(ErrorCode::InternalInconsistency, "valuation law " + l.name + " fails at t^" +
                                                          std::to_string(*l.first_violation));

    if (s.mode == SelmerMode::Trivial) {
      rep.unit_disk = unit_disk_check(c, e, {});
      rep.regimes.push_back({"selmer", true, "trivial Selmer group: J(Q) is finite of odd order"});
      rep.regimes.push_back({"unit disk", true, to_string(rep.unit_disk.status)});
      rep.notes.push_back("log lattice and disk scans skipped for trivial Selmer input");
      rep.verdict = Verdict::Success;
      rep.reason = "trivial Selmer group";
      return rep;
    }

    LatticeOptions lopts = opts.lattice;
    if (s.u_override) lopts.u_override = s.u_override;
    const LogLattice lat = log_lattice(c, lopts);
    rep.lattice = summarize_lattice(lat);

    if (s.mode == SelmerMode::F2gVectorsOverride) {
      Gf2Basis span(static_cast<std::size_t>(c.g));
      for (const auto& v : s.vectors) {
        if (v.size() != static_cast<std::size_t>(c.g))
          throw Error(ErrorCode::InvalidInput, "F_2^g vector " + gf2_to_string(v) + " has the wrong length");
        if (span.insert(v)) rep.selmer_F2g.push_back(v);
      }
      const std::size_t declared = s.declared_dimension.value_or(s.vectors.size());
      if (span.rank() < declared)
        throw Error(ErrorCode::RankDrop, "F_2^g vectors span dimension " + std::to_string(span.rank()));
      rep.unit_disk = unit_disk_check_f2g(c, e, lat, rep.selmer_F2g);
    } else {
      rep.selmer_H2 = selmer_to_H2(e, s);
      const F2gImage img = selmer_to_F2g(e, lat, rep.selmer_H2, s.exact);
      rep.selmer_F2g = img.basis;
      rep.selmer_notes = img.notes;
      rep.unit_disk = unit_disk_check(c, e, rep.selmer_H2);
    }

    const DiskScanResult zp0 = disk_scan(lat, DiskCenter::P0, opts.scan);
    const DiskScanResult zinf = disk_scan(lat, DiskCenter::Infinity, opts.scan);
    rep.z_p0 = summarize_scan(zp0);
    rep.z_inf = summarize_scan(zinf);

    for (const auto* z : {&zp0, &zinf}) {
      std::vector<Gf2Vec> hit;
      for (const auto& v : z->classes)
        if (in_span(rep.selmer_F2g, v)) hit.push_back(v);
      RegimeResult rr{to_string(z->center) + " disk", hit.empty() && z->covers_disk, ""};
      if (!z->covers_disk) rr.detail = "certificate does not cover the disk";
      for (const auto& v : hit) {
        rr.detail += (rr.detail.empty() ? "meets the Selmer image at " : ", ") + gf2_to_string(v);
        rep.witnesses.push_back(v);
      }
      rep.regimes.push_back(rr);
    }
    RegimeResult ur{"unit disk", rep.unit_disk.passes, to_string(rep.unit_disk.status)};
    if (!rep.unit_disk.note.empty()) ur.detail += ": " + rep.unit_disk.note;
    rep.regimes.push_back(ur);

    if (!rep.witnesses.empty()) {
      rep.verdict = Verdict::Failure;
      rep.reason = "a residue disk class lies in the Selmer image";
    } else if (rep.unit_disk.status == UnitDiskStatus::Checked && rep.unit_disk.member) {
      rep.verdict = Verdict::Failure;
      rep.witnesses.push_back(rep.unit_disk.x0_class);
      rep.reason = "x0 - theta lies in the Selmer image";
    } else if (!zp0.covers_disk || !zinf.covers_disk) {
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "scan certificate incomplete";
    } else if (!rep.unit_disk.passes) {
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "unit disk not settled: " + to_string(rep.unit_disk.status);
    } else {
      rep.verdict = Verdict::Success;
      rep.reason = "all regimes pass";
    }
  } catch (const std::exception& ex) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = ex.what();
  }
  return rep;
}

}  // namespace selchab
