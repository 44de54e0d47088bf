#pragma once

// Curves y^2 = x^(2g+1) + h(x)^2: assumption checks, expansions of the
// differentials x^j dx / y at P0 = (0, h(0)) and at infinity, and the
// logarithm lattice.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selchab/intpoly.hpp"
#include "selchab/kernels.hpp"
#include "selchab/series.hpp"
#include "selchab/z2matrix.hpp"

namespace selchab {

struct CurveSpec {
  int g = 0;
  IntPoly h;
  IntPoly f;
  bool unit_disk_supported = false;  // h(1) even

  std::string describe() const;
};

/// Throws DegreeTooLarge (deg h > g), EvenH0, InvalidInput (g < 1).
CurveSpec new_curve(int g, const IntPoly& h);

struct RationalPoint {
  bool at_infinity = false;
  mpz_class x, y;
  std::string to_string() const;
};

struct StructuralReport {
  bool f_minus_h2_is_monomial = false;                // f - h^2 == x^(2g+1)
  std::vector<std::pair<int, int>> reduced_affine_points;  // on eta^2 + eta = xi^(2g+1)
  std::size_t reduced_point_count = 0;                // including infinity
  std::vector<RationalPoint> odd_points;
  bool ok = false;
};

StructuralReport structural_checks(const CurveSpec& c);

/// w[j] = x^j dx / y and ell[j] = its integral from the base point, as series
/// in the local parameter.
struct Expansion {
  std::vector<PadicSeries> w;
  std::vector<PadicSeries> ell;
  ValuationLaw w_law;
  ValuationLaw ell_law;
  std::int64_t relprec = 0;

  std::size_t order_bound() const { return ell.empty() ? 0 : ell.front().order_bound(); }
  Expansion truncated(std::size_t n) const;
};

/// Parameter t = x at P0.
Expansion expand_at_p0(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                       ExecPolicy policy = default_policy());
/// Parameter t = y / x^(g+1) at infinity; only even powers occur in w.
Expansion expand_at_infinity(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                             ExecPolicy policy = default_policy());
/// Parameter (y - h(x)) / x^(g+1) at infinity. Used only for the convergence law.
Expansion expand_at_infinity_shifted(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                                     ExecPolicy policy = default_policy());

struct LawCheck {
  std::string name;
  std::string law;
  std::size_t coefficients_checked = 0;
  std::optional<std::size_t> first_violation;
  bool holds() const { return !first_violation; }
};

std::vector<LawCheck> check_valuation_laws(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                                           ExecPolicy policy = default_policy());

std::size_t default_nterms(int g, std::int64_t prec);
inline constexpr std::int64_t kDefaultPrecision = 24;

struct LatticeOptions {
  std::int64_t precision = kDefaultPrecision;  // absolute precision of the entries of L
  int max_retries = 4;
  std::optional<DyadicMatrix> u_override;
  std::size_t scan_terms = 0;  // 0: default_nterms(g, precision)
  ExecPolicy policy = default_policy();
};

struct LogLattice {
  int g = 0;
  Z2Matrix L;                 // 2g x g
  std::vector<int> row_d;     // exponent d of the generator behind each row
  std::vector<int> row_scale; // 2 or 4
  DyadicMatrix U;
  DyadicMatrix U_inv;
  bool u_overridden = false;
  Z2Matrix LU;
  LatticeCertificate certificate;
  std::int64_t precision = 0;
  std::int64_t working_relprec = 0;
  std::size_t series_terms = 0;  // coefficients used to assemble L
  int retries = 0;
  Expansion p0;        // truncated to the scan length
  Expansion infinity;  // idem
};

/// Throws InsufficientPrecision once the retries are used up, and
/// InvalidInput when a U override fails the lattice certificate.
LogLattice log_lattice(const CurveSpec& c, const LatticeOptions& opts = {});

/// Mod-2 image of row r of L*U.
Gf2Vec lattice_row_mod2(const LogLattice& lat, std::size_t r);

}  // namespace selchab
