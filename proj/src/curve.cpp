#include "selchab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "selchab/error.hpp"
#include "selchab/gf2.hpp"

namespace selchab {

namespace {

// H(s) = s^(g+1) h(1/s).
IntPoly reversed_h(const CurveSpec& c) {
  std::vector<mpz_class> coeffs(static_cast<std::size_t>(c.g) + 2);
  for (int i = 0; i <= c.h.degree(); ++i)
    coeffs[static_cast<std::size_t>(c.g + 1 - i)] = c.h.coeff(static_cast<std::size_t>(i));
  return IntPoly(std::move(coeffs));
}

PadicSeries one_plus(const PadicSeries& s, std::int64_t relprec) {
  PadicSeries r = s;
  if (r.order_bound() > 0) r[0] = r[0] + PadicNumber::from_integer(1, relprec);
  return r;
}

// Drops an exact-zero constant term: s / t.
PadicSeries divide_by_t(const PadicSeries& s) {
  if (s.order_bound() == 0) return {};
  if (!s[0].is_zero())
    throw Error(ErrorCode::InternalInconsistency, "series is not divisible by t");
  std::vector<PadicNumber> c(s.coeffs().begin() + 1, s.coeffs().end());
  return PadicSeries(std::move(c));
}

void finish(Expansion& e, const std::vector<PadicSeries>& w) {
  e.w.clear();
  e.ell.clear();
  for (const auto& wj : w) {
    PadicSeries ws = wj;
    ws.set_law(e.w_law);
    PadicSeries ls = formal_integrate(wj);
    ls.set_law(e.ell_law);
    e.w.push_back(std::move(ws));
    e.ell.push_back(std::move(ls));
  }
}

}  // namespace

std::string CurveSpec::describe() const {
  std::ostringstream os;
  os << "y^2 = x^" << 2 * g + 1 << " + (" << h.to_string() << ")^2, g = " << g;
  return os.str();
}

CurveSpec new_curve(int g, const IntPoly& h) {
  if (g < 1) throw Error(ErrorCode::InvalidInput, "genus must be at least 1");
  if (h.degree() > g)
    throw Error(ErrorCode::DegreeTooLarge,
                "deg h = " + std::to_string(h.degree()) + " exceeds g = " + std::to_string(g));
  if (h.is_zero() || mpz_even_p(h.coeff(0).get_mpz_t()))
    throw Error(ErrorCode::EvenH0, "h(0) must be odd");
  CurveSpec c;
  c.g = g;
  c.h = h;
  c.f = IntPoly::monomial(1, static_cast<std::size_t>(2 * g + 1)) + h * h;
  c.unit_disk_supported = mpz_even_p(h.eval(1).get_mpz_t()) != 0;
  const Gf2Poly fbar = Gf2Poly::from_intpoly(c.f);
  if (!is_squarefree(fbar))
    throw Error(ErrorCode::InternalInconsistency, "f mod 2 is not squarefree");
  return c;
}

std::string RationalPoint::to_string() const {
  if (at_infinity) return "inf";
  return "(" + x.get_str() + "," + y.get_str() + ")";
}

StructuralReport structural_checks(const CurveSpec& c) {
  StructuralReport r;
  r.f_minus_h2_is_monomial = (c.f - c.h * c.h) == IntPoly::monomial(1, static_cast<std::size_t>(2 * c.g + 1));
  // Special fibre of the smooth model: eta^2 + eta = xi^(2g+1) over F_2.
  for (int xi = 0; xi < 2; ++xi)
    for (int eta = 0; eta < 2; ++eta)
      if (((eta * eta + eta) & 1) == (xi & 1)) r.reduced_affine_points.emplace_back(xi, eta);
  r.reduced_point_count = r.reduced_affine_points.size() + 1;
  RationalPoint inf;
  inf.at_infinity = true;
  r.odd_points.push_back(inf);
  const mpz_class h0 = c.h.coeff(0);
  r.odd_points.push_back(RationalPoint{false, 0, h0});
  r.odd_points.push_back(RationalPoint{false, 0, -h0});
  const std::vector<std::pair<int, int>> expected{{0, 0}, {0, 1}};
  bool points_on_curve = true;
  for (const auto& p : r.odd_points)
    if (!p.at_infinity) points_on_curve = points_on_curve && (p.y * p.y == c.f.eval(p.x));
  r.ok = r.f_minus_h2_is_monomial && r.reduced_affine_points == expected && r.reduced_point_count == 3 &&
         points_on_curve;
  if (!r.ok) throw Error(ErrorCode::InternalInconsistency, "structural checks failed for " + c.describe());
  return r;
}

Expansion Expansion::truncated(std::size_t n) const {
  Expansion e = *this;
  for (auto& s : e.w) s = s.truncated(n);
  for (auto& s : e.ell) s = s.truncated(n);
  return e;
}

Expansion expand_at_p0(const CurveSpec& c, std::size_t nterms, std::int64_t relprec, ExecPolicy policy) {
  const std::size_t N = nterms;
  const auto G = static_cast<std::size_t>(c.g);
  if (N < 2 * G) throw Error(ErrorCode::InvalidInput, "nterms must be at least 2g");
  // y = h sqrt(1 + t^(2g+1) / h^2), so 1/y = R (1 + t^(2g+1) R^2)^(-1/2) with R = 1/h.
  const PadicSeries R = reciprocal(PadicSeries::from_poly(c.h, N, relprec), policy);
  const PadicSeries u = multiply(R, R, N, policy).shifted(2 * G + 1).truncated(N);
  const PadicSeries w0 = multiply(R, inv_sqrt_unit(one_plus(u, relprec), policy), N, policy);
  Expansion e;
  e.relprec = relprec;
  const std::int64_t den = 2 * c.g + 1;
  e.w_law = ValuationLaw{0, -2, den, true, false, 0};
  e.ell_law = ValuationLaw{2, -2, den, true, true, 0};
  std::vector<PadicSeries> w;
  for (std::size_t j = 0; j < G; ++j) w.push_back(w0.shifted(j).truncated(N));
  finish(e, w);
  return e;
}

Expansion expand_at_infinity(const CurveSpec& c, std::size_t nterms, std::int64_t relprec, ExecPolicy policy) {
  const std::size_t N = nterms;
  const auto G = static_cast<std::size_t>(c.g);
  if (N < 2 * G) throw Error(ErrorCode::InvalidInput, "nterms must be at least 2g");
  // In T = t^2: s + H(s)^2 = T with s = 1/x, and
  // w_j = -s^(g-1-j) (ds/dt) / t dt = -2 s^(g-1-j) s'(T) dt.
  const std::size_t M = N / 2 + 2;
  const IntPoly H = reversed_h(c);
  const PadicSeries T = PadicSeries::from_poly(IntPoly::x(), M, relprec);
  const PadicSeries s = fixed_point_invert(T, H * H, relprec, policy);
  const PadicSeries ds = differentiate(s).mul_pow2(1);
  const std::size_t m = ds.order_bound();
  Expansion e;
  e.relprec = relprec;
  e.w_law = ValuationLaw{1, 0, 1, false, false, 0};
  e.ell_law = ValuationLaw{1, 0, 1, false, false, 0};
  std::vector<PadicSeries> w(G);
  PadicSeries sp = PadicSeries::constant(PadicNumber::from_integer(1, relprec), m);
  for (std::size_t k = 0; k < G; ++k) {
    // k = g - 1 - j
    w[G - 1 - k] = (-multiply(sp, ds, m, policy)).spread(2).truncated(N);
    if (k + 1 < G) sp = multiply(sp, s.truncated(m), m, policy);
  }
  finish(e, w);
  return e;
}

Expansion expand_at_infinity_shifted(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                                     ExecPolicy policy) {
  const std::size_t N = nterms + 2;
  const auto G = static_cast<std::size_t>(c.g);
  // With u = t - H(s): s = u^2 + 2 u H(s), and y = x^(g+1) (u + H(s)).
  const IntPoly H = reversed_h(c);
  const IntPoly dH = H.derivative();
  const PadicSeries rhs = PadicSeries::from_poly(IntPoly::monomial(1, 2), N, relprec);
  const auto phi = [&](const PadicSeries& x) {
    return eval_poly(H, x, relprec, policy).mul_pow2(1).shifted(1).truncated(x.order_bound()).scaled(
        PadicNumber::from_integer(-1, relprec));
  };
  const auto dphi = [&](const PadicSeries& x) {
    return eval_poly(dH, x, relprec, policy).mul_pow2(1).shifted(1).truncated(x.order_bound()).scaled(
        PadicNumber::from_integer(-1, relprec));
  };
  const PadicSeries s = fixed_point_invert(rhs, phi, dphi, policy);
  PadicSeries D = eval_poly(H, s, relprec, policy);
  D[1] = D[1] + PadicNumber::from_integer(1, relprec);
  D = divide_by_t(D);
  const PadicSeries ds_over_u = divide_by_t(differentiate(s));
  const std::size_t m = std::min(D.order_bound(), ds_over_u.order_bound());
  const PadicSeries base = -multiply(ds_over_u, reciprocal(D.truncated(m), policy), m, policy);
  Expansion e;
  e.relprec = relprec;
  const std::int64_t den = 2 * c.g + 1;
  e.w_law = ValuationLaw{3, 1, den, false, false, 0};
  e.ell_law = ValuationLaw{2, 1, den, false, true, 0};
  std::vector<PadicSeries> w(G);
  PadicSeries sp = PadicSeries::constant(PadicNumber::from_integer(1, relprec), m);
  for (std::size_t k = 0; k < G; ++k) {
    w[G - 1 - k] = multiply(sp, base, m, policy);
    if (k + 1 < G) sp = multiply(sp, s.truncated(m), m, policy);
  }
  finish(e, w);
  return e;
}

std::vector<LawCheck> check_valuation_laws(const CurveSpec& c, std::size_t nterms, std::int64_t relprec,
                                           ExecPolicy policy) {
  std::vector<LawCheck> out;
  const auto add = [&](const std::string& name, const Expansion& e) {
    LawCheck w{name + " w", e.w_law.to_string(), 0, std::nullopt};
    LawCheck l{name + " ell", e.ell_law.to_string(), 0, std::nullopt};
    for (std::size_t j = 0; j < e.w.size(); ++j) {
      w.coefficients_checked += e.w[j].order_bound();
      l.coefficients_checked += e.ell[j].order_bound();
      if (auto v = e.w[j].first_violation(e.w_law); v && (!w.first_violation || *v < *w.first_violation))
        w.first_violation = v;
      if (auto v = e.ell[j].first_violation(e.ell_law); v && (!l.first_violation || *v < *l.first_violation))
        l.first_violation = v;
    }
    out.push_back(w);
    out.push_back(l);
  };
  add("P0", expand_at_p0(c, nterms, relprec, policy));
  add("infinity", expand_at_infinity(c, nterms, relprec, policy));
  add("infinity shifted", expand_at_infinity_shifted(c, nterms, relprec, policy));
  return out;
}

std::size_t default_nterms(int g, std::int64_t prec) {
  return static_cast<std::size_t>(std::max<std::int64_t>(4 * g, 2 * prec));
}

namespace {

// Last n whose term bound  scale*n - 2(dn - 1)/(2g+1) - log2 n  is below target.
std::int64_t row_cutoff(int g, int d, int scale_bits, std::int64_t target) {
  const long double den = 2.0L * g + 1;
  const long double slope = scale_bits - 2.0L * d / den;
  std::int64_t last_bad = 0;
  for (std::int64_t n = 1;; ++n) {
    const long double ln = static_cast<long double>(n);
    const long double f = scale_bits * ln - 2.0L * (d * ln - 1) / den - std::log2(ln);
    if (f < static_cast<long double>(target)) last_bad = n;
    else if (slope - 1.0L / (ln * std::log(2.0L)) > 0) break;
  }
  return last_bad;
}

LogLattice build_lattice(const CurveSpec& c, std::int64_t prec, const LatticeOptions& opts) {
  const int g = c.g;
  const auto G = static_cast<std::size_t>(g);
  LogLattice lat;
  lat.g = g;
  lat.precision = prec;
  for (int d = 1; d <= g; ++d) {
    lat.row_d.push_back(d);
    lat.row_scale.push_back(2);
  }
  for (int d = 1; d <= 2 * g - 1; d += 2) {
    lat.row_d.push_back(d);
    lat.row_scale.push_back(4);
  }
  std::vector<std::int64_t> cutoff;
  std::size_t needed = 0;
  for (std::size_t r = 0; r < lat.row_d.size(); ++r) {
    cutoff.push_back(row_cutoff(g, lat.row_d[r], lat.row_scale[r] == 2 ? 1 : 2, prec));
    needed = std::max(needed, static_cast<std::size_t>(lat.row_d[r] * cutoff.back()));
  }
  const std::size_t scan = opts.scan_terms ? opts.scan_terms : default_nterms(g, prec);
  const std::size_t N = std::max({needed, scan, 2 * G});
  lat.series_terms = N;
  lat.working_relprec = prec + 32;
  const Expansion p0 = expand_at_p0(c, N, lat.working_relprec, opts.policy);
  const PadicSeries& w0 = p0.w[0];

  lat.L = Z2Matrix(lat.row_d.size(), G);
  for (std::size_t r = 0; r < lat.row_d.size(); ++r) {
    const std::int64_t d = lat.row_d[r];
    const std::int64_t sb = lat.row_scale[r] == 2 ? 1 : 2;
    for (std::size_t j = 0; j < G; ++j) {
      PadicNumber acc;
      for (std::int64_t n = 1; n <= cutoff[r]; ++n) {
        const std::int64_t k = d * n - 1 - static_cast<std::int64_t>(j);
        if (k < 0) continue;
        const PadicNumber& a = w0[static_cast<std::size_t>(k)];
        if (a.is_exact_zero()) continue;
        const PadicNumber weight =
            PadicNumber::from_rational(1, n, std::max<std::int64_t>(a.relprec(), 1) + 64).mul_pow2(sb * n);
        acc += a * weight;
      }
      if (acc.absprec() < prec)
        throw Error(ErrorCode::InsufficientPrecision,
                    "log matrix entry (" + std::to_string(r) + "," + std::to_string(j) + ") known only to " +
                        std::to_string(acc.absprec()) + " bits");
      lat.L.at(r, j) = acc.truncated(prec);
    }
  }

  if (opts.u_override) {
    const DyadicMatrix& U = *opts.u_override;
    if (U.rows() != G || U.cols() != G) throw Error(ErrorCode::InvalidInput, "U override has the wrong size");
    auto inv = U.inverse();
    if (!inv) throw Error(ErrorCode::InvalidInput, "U override is not invertible over Z[1/2]");
    lat.U = U;
    lat.U_inv = *inv;
    lat.u_overridden = true;
    lat.certificate = certify_lattice(lat.L, U);
    if (!lat.certificate.ok) {
      // Either the override is wrong or L is too coarse; only the latter is retried.
      const EchelonResult ech = echelonize_over_Z2(lat.L);
      if (!same_lattice(ech.U, U))
        throw Error(ErrorCode::InvalidInput, "U override does not generate the log lattice: " +
                                                 lat.certificate.detail);
      throw Error(ErrorCode::InsufficientPrecision, "lattice certificate for the U override failed");
    }
  } else {
    const EchelonResult ech = echelonize_over_Z2(lat.L);
    lat.U = ech.U;
    lat.U_inv = ech.U_inv;
    lat.certificate = certify_lattice(lat.L, lat.U);
  }
  lat.LU = lat.L * lat.U;
  lat.p0 = p0.truncated(scan);
  lat.infinity = expand_at_infinity(c, scan, lat.working_relprec, opts.policy);
  return lat;
}

}  // namespace

LogLattice log_lattice(const CurveSpec& c, const LatticeOptions& opts) {
  std::int64_t prec = opts.precision;
  for (int attempt = 0;; ++attempt) {
    try {
      LogLattice lat = build_lattice(c, prec, opts);
      lat.retries = attempt;
      return lat;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientPrecision || attempt >= opts.max_retries) throw;
      prec *= 2;
    }
  }
}

Gf2Vec lattice_row_mod2(const LogLattice& lat, std::size_t r) {
  if (r >= lat.LU.rows()) throw Error(ErrorCode::IndexOutOfRange, "lattice row out of range");
  Gf2Vec v(lat.LU.cols());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const PadicNumber& x = lat.LU.at(r, j);
    if (!x.is_integral() || x.absprec() < 1)
      throw Error(ErrorCode::InsufficientPrecision, "row entry not known mod 2");
    v[j] = static_cast<std::uint8_t>(x.is_nonzero() && x.valuation() == 0);
  }
  return v;
}

}  // namespace selchab
