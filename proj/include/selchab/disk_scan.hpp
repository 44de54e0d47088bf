#pragma once

// The map rho and the finite sets Z(P0), Z(inf) of rho(log' i(P)) over the
// punctured residue disks.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selchab/curve.hpp"
#include "selchab/gf2.hpp"

namespace selchab {

enum class DiskCenter { P0, Infinity };
std::string to_string(DiskCenter c);

/// 2^(-v) v mod 2 for the minimal valuation v. Throws IndistinguishableFromZero
/// unless the minimum is certified and every entry is known modulo 2^(v+1).
Gf2Vec rho(const std::vector<PadicNumber>& v);
std::optional<Gf2Vec> try_rho(const std::vector<PadicNumber>& v);

/// Components of log'(t) = (ell_0(t), ..., ell_{g-1}(t)) U along the disk.
std::vector<PadicSeries> disk_log_series(const LogLattice& lat, DiskCenter center);
std::vector<PadicNumber> evaluate_log(const std::vector<PadicSeries>& F, const PadicNumber& t);

/// The class t in 2^k (u + 2^j Z_2), or the whole region v2(t) >= k when dominant.
struct ScanCell {
  std::int64_t k = 1;
  mpz_class u = 1;
  std::int64_t j = 1;
  bool dominant = false;
  std::int64_t value_valuation = 0;  // valuation of log' on the class
  Gf2Vec rho;
  std::string describe() const;
};

struct DiskScanResult {
  DiskCenter center = DiskCenter::P0;
  std::vector<Gf2Vec> classes;  // sorted, distinct
  std::vector<ScanCell> certificate;
  std::size_t n1 = 0;           // first certified nonzero coefficient
  std::int64_t k0 = 0;          // dominance threshold
  std::size_t classes_evaluated = 0;
  bool covers_disk = false;
};

struct ScanOptions {
  std::size_t budget = 4096;
  ExecPolicy policy = default_policy();
};

/// Throws ScanBudgetExceeded, InsufficientPrecision.
DiskScanResult disk_scan(const LogLattice& lat, DiskCenter center, const ScanOptions& opts = {});
DiskScanResult disk_scan(const std::vector<PadicSeries>& F, DiskCenter center, const ScanOptions& opts = {});

/// Checks that the cells of the certificate partition 2 Z_2 \ {0}.
bool certificate_covers_disk(const std::vector<ScanCell>& cells);

/// Distinct rho(log'(2u)) for 0 < u < 2^bits.
std::vector<Gf2Vec> brute_force_classes_serial(const std::vector<PadicSeries>& F, unsigned bits);
std::vector<Gf2Vec> brute_force_classes_parallel(const std::vector<PadicSeries>& F, unsigned bits);
std::vector<Gf2Vec> brute_force_classes(const std::vector<PadicSeries>& F, unsigned bits,
                                        ExecPolicy policy = default_policy());

}  // namespace selchab
