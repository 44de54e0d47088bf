#pragma once

// Combines the Selmer input with the local data at 2: the unit disk, and the
// disks around P0 and infinity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selchab/curve.hpp"
#include "selchab/disk_scan.hpp"
#include "selchab/etale.hpp"

namespace selchab {

enum class SelmerMode { Trivial, UnitRepresentatives, Delta2Coordinates, F2gVectorsOverride };
std::string to_string(SelmerMode m);
SelmerMode parse_selmer_mode(const std::string& s);

struct SelmerInput {
  SelmerMode mode = SelmerMode::Trivial;
  std::vector<IntPoly> unit_reps;     // polynomials in theta
  std::vector<Gf2Vec> vectors;        // delta2 coordinates or F_2^g vectors
  std::optional<DyadicMatrix> u_override;
  std::optional<std::size_t> declared_dimension;
  bool exact = true;                  // false: generators of a larger group than Sel_2
  std::string provenance;
};

/// Classes in H_2. Throws RankDrop, NotAUnit, InvalidInput.
std::vector<SquareClass> selmer_to_H2(const EtaleData& e, const SelmerInput& s);

struct F2gImage {
  std::vector<Gf2Vec> basis;
  std::vector<std::string> notes;
};

/// Image of a class of the local image in F_2^g = im log' / 2 im log'.
/// Throws NotInLocalImage.
Gf2Vec delta2_class_to_F2g(const EtaleData& e, const LogLattice& lat, const SquareClass& c);
/// Classes outside the local image raise NotInLocalImage when `exact`, and are
/// dropped with a note otherwise.
F2gImage selmer_to_F2g(const EtaleData& e, const LogLattice& lat, const std::vector<SquareClass>& classes,
                       bool exact = true);

enum class UnitDiskStatus { NotApplicable, No2adicPoints, Checked, CheckedViaF2g, Skipped };
std::string to_string(UnitDiskStatus s);

struct UnitDiskResult {
  UnitDiskStatus status = UnitDiskStatus::NotApplicable;
  int x0_mod8 = 0;       // representative in [-3, 4]
  SquareClass x0_class;  // class of x0 - theta
  std::optional<Gf2Vec> x0_f2g;
  bool member = false;
  bool passes = false;
  std::string note;
};

/// Residue of x(P) mod 8 for points with v2(x(P)) = 0, or nullopt when there
/// are none (h(1) odd is handled by the caller).
std::optional<int> unit_disk_x0(const CurveSpec& c);
UnitDiskResult unit_disk_check(const CurveSpec& c, const EtaleData& e, const std::vector<SquareClass>& selmer_H2);
/// Variant for Selmer data given only in F_2^g coordinates.
UnitDiskResult unit_disk_check_f2g(const CurveSpec& c, const EtaleData& e, const LogLattice& lat,
                                   const std::vector<Gf2Vec>& selmer_F2g);

enum class Verdict { Success, Failure, Inconclusive };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);
int exit_code(Verdict v);

struct LatticeSummary {
  std::vector<std::vector<std::string>> L;
  std::vector<std::vector<std::string>> U;
  std::vector<std::vector<std::string>> LU;
  std::vector<int> row_d;
  std::vector<int> row_scale;
  std::int64_t precision = 0;
  std::size_t series_terms = 0;
  int retries = 0;
  bool u_overridden = false;
  bool certified = false;
  std::string detail;
};

struct ScanSummary {
  std::string center;
  std::vector<Gf2Vec> classes;
  std::vector<std::string> certificate;
  std::int64_t k0 = 0;
  std::size_t classes_evaluated = 0;
  bool covers_disk = false;
};

LatticeSummary summarize_lattice(const LogLattice& lat);
ScanSummary summarize_scan(const DiskScanResult& r);

struct RegimeResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  // curve
  int g = 0;
  std::string h;
  std::string f;
  std::string name;
  // structure
  bool structure_ok = false;
  std::vector<std::string> odd_points;
  std::vector<int> factor_degrees;
  std::size_t dim_h2 = 0;
  std::size_t delta2_dim = 0;
  std::vector<int> I_set;
  std::vector<LawCheck> laws;
  // selmer
  std::string selmer_mode;
  std::string selmer_provenance;
  bool reproduction_mode = false;
  std::vector<SquareClass> selmer_H2;
  std::vector<Gf2Vec> selmer_F2g;
  std::vector<std::string> selmer_notes;
  // local
  std::optional<LatticeSummary> lattice;
  UnitDiskResult unit_disk;
  std::optional<ScanSummary> z_p0;
  std::optional<ScanSummary> z_inf;
  std::vector<RegimeResult> regimes;
  // conclusion
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<Gf2Vec> witnesses;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  LatticeOptions lattice;
  ScanOptions scan;
  std::size_t law_terms = 0;  // 0: default_nterms(g, precision)
  std::string name;
};

/// Never throws for mathematical failures; they become Inconclusive.
VerificationReport verify_curve(const CurveSpec& c, const SelmerInput& s, const VerifyOptions& opts = {});

bool in_span(const std::vector<Gf2Vec>& basis, const Gf2Vec& v);

}  // namespace selchab
