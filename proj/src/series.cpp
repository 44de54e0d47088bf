#include "selchab/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "selchab/error.hpp"

namespace selchab {

namespace {

using kernels::kInf;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// 2^e * c truncated at absolute precision prec.
PadicNumber from_scaled(const mpz_class& c, std::int64_t e, std::int64_t prec) {
  if (prec >= kInf) {
    if (sgn(c) == 0) return {};
    throw Error(ErrorCode::InternalInconsistency, "nonzero value with infinite precision");
  }
  if (sgn(c) == 0) return PadicNumber::zero(prec);
  const std::int64_t s = v2(c);
  const std::int64_t v = e + s;
  if (v >= prec) return PadicNumber::zero(prec);
  mpz_class u;
  mpz_fdiv_q_2exp(u.get_mpz_t(), c.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  return PadicNumber::from_parts(v, u, prec - v);
}

// Fixed-point view of a coefficient list: value_i = 2^e * rep_i (mod 2^absprec_i).
struct FixedPoint {
  std::vector<std::int64_t> val;
  std::vector<std::int64_t> abs;
  std::int64_t e = kInf;
};

FixedPoint precision_view(const PadicSeries& s, std::size_t n) {
  FixedPoint fp;
  fp.val.resize(n);
  fp.abs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PadicNumber& c = s[i];
    if (c.is_exact_zero()) {
      fp.val[i] = kInf;
      fp.abs[i] = kInf;
    } else {
      fp.val[i] = c.valuation();
      fp.abs[i] = c.absprec();
      fp.e = std::min(fp.e, fp.val[i]);
    }
  }
  return fp;
}

std::vector<mpz_class> representatives(const PadicSeries& s, const FixedPoint& fp, std::size_t n,
                                       std::int64_t width) {
  std::vector<mpz_class> reps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PadicNumber& c = s[i];
    if (!c.is_nonzero()) continue;
    const std::int64_t shift = c.valuation() - fp.e;
    if (shift >= width) continue;
    reps[i] = c.unit() << static_cast<mp_bitcnt_t>(shift);
    mpz_fdiv_r_2exp(reps[i].get_mpz_t(), reps[i].get_mpz_t(), static_cast<mp_bitcnt_t>(width));
  }
  return reps;
}

}  // namespace

long double ValuationLaw::bound(std::int64_t n) const {
  long double affine;
  if (ceil_affine) {
    affine = static_cast<long double>(ceil_div(num0 + num1 * n, den));
  } else {
    affine = static_cast<long double>(num0 + num1 * n) / static_cast<long double>(den);
  }
  affine += static_cast<long double>(shift);
  if (minus_log2 && n > 1) affine -= std::log2(static_cast<long double>(n));
  return affine;
}

std::int64_t ValuationLaw::integer_bound(std::int64_t n) const {
  // Exact when no logarithm is involved.
  if (!minus_log2 || n <= 1) {
    const std::int64_t a = ceil_affine ? ceil_div(num0 + num1 * n, den) : ceil_div(num0 + num1 * n, den);
    return a + shift;
  }
  const long double b = bound(n);
  return static_cast<std::int64_t>(std::ceil(b - 1e-9L));
}

std::string ValuationLaw::to_string() const {
  std::ostringstream os;
  if (ceil_affine) os << "ceil(";
  os << "(" << num0 << " + " << num1 << "*n)/" << den;
  if (ceil_affine) os << ")";
  if (shift != 0) os << (shift > 0 ? " + " : " - ") << std::llabs(shift);
  if (minus_log2) os << " - log2(n)";
  return os.str();
}

PadicSeries PadicSeries::from_poly(const IntPoly& p, std::size_t order_bound, std::int64_t relprec) {
  std::vector<PadicNumber> c(order_bound);
  for (std::size_t i = 0; i < order_bound; ++i) c[i] = PadicNumber::from_integer(p.coeff(i), relprec);
  return PadicSeries(std::move(c));
}

PadicSeries PadicSeries::constant(const PadicNumber& c, std::size_t order_bound) {
  std::vector<PadicNumber> v(order_bound);
  if (order_bound > 0) v[0] = c;
  return PadicSeries(std::move(v));
}

std::optional<std::size_t> PadicSeries::first_violation(const ValuationLaw& law) const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const PadicNumber& c = coeffs_[n];
    if (c.is_exact_zero()) continue;
    const std::int64_t b = law.integer_bound(static_cast<std::int64_t>(n));
    // For O(2^a) the valuation is only known to be >= a.
    if (c.valuation() < b) return n;
  }
  return std::nullopt;
}

PadicSeries PadicSeries::truncated(std::size_t order_bound) const {
  std::vector<PadicNumber> c(coeffs_.begin(),
                             coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order_bound, coeffs_.size())));
  return PadicSeries(std::move(c), law_);
}

std::int64_t PadicSeries::min_absprec() const {
  std::int64_t m = kInf;
  for (const auto& c : coeffs_) m = std::min(m, c.absprec());
  return m;
}

PadicSeries PadicSeries::operator-() const {
  std::vector<PadicNumber> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return PadicSeries(std::move(c), law_);
}

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) {
  const std::size_t n = std::min(a.order_bound(), b.order_bound());
  std::vector<PadicNumber> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return PadicSeries(std::move(c));
}

PadicSeries operator*(const PadicSeries& a, const PadicSeries& b) {
  return multiply(a, b, std::min(a.order_bound(), b.order_bound()));
}

PadicSeries PadicSeries::scaled(const PadicNumber& c) const {
  std::vector<PadicNumber> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] * c;
  return PadicSeries(std::move(out));
}

PadicSeries PadicSeries::mul_pow2(std::int64_t k) const {
  std::vector<PadicNumber> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i].mul_pow2(k);
  std::optional<ValuationLaw> law;
  if (law_) law = law_->shifted(k);
  return PadicSeries(std::move(out), law);
}

PadicSeries PadicSeries::shifted(std::size_t k) const {
  std::vector<PadicNumber> out(coeffs_.size() + k);
  std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
  return PadicSeries(std::move(out));
}

PadicSeries PadicSeries::spread(std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::InvalidInput, "spread factor must be positive");
  if (coeffs_.empty()) return {};
  // Known modulo t^(k * N); positions between multiples of k are exact zeros.
  std::vector<PadicNumber> out(coeffs_.size() * k);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * k] = coeffs_[i];
  return PadicSeries(std::move(out));
}

std::string PadicSeries::to_string(std::string_view var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[i].to_string() << ")";
    if (i > 0) os << "*" << var << "^" << i;
  }
  if (!first) os << " + ";
  os << "O(" << var << "^" << coeffs_.size() << ")";
  return os.str();
}

PadicSeries multiply(const PadicSeries& a, const PadicSeries& b, std::size_t order_bound,
                     ExecPolicy policy) {
  const std::size_t n = std::min({order_bound, a.order_bound(), b.order_bound()});
  if (n == 0) return {};
  const std::size_t na = std::min(n, a.order_bound());
  const std::size_t nb = std::min(n, b.order_bound());
  const FixedPoint fa = precision_view(a, na);
  const FixedPoint fb = precision_view(b, nb);
  const std::vector<std::int64_t> prec =
      kernels::product_precision(fa.val, fa.abs, fb.val, fb.abs, n, policy);
  std::vector<PadicNumber> out(n);
  if (fa.e >= kInf || fb.e >= kInf) return PadicSeries(std::move(out));

  std::int64_t pmax = std::numeric_limits<std::int64_t>::min();
  for (auto p : prec)
    if (p < kInf) pmax = std::max(pmax, p);
  const std::int64_t e = fa.e + fb.e;
  const std::int64_t width = pmax - e;
  if (width <= 0) {
    for (std::size_t k = 0; k < n; ++k)
      if (prec[k] < kInf) out[k] = PadicNumber::zero(prec[k]);
    return PadicSeries(std::move(out));
  }
  const auto ra = representatives(a, fa, na, width);
  const auto rb = representatives(b, fb, nb, width);
  const auto conv = kernels::convolve(ra, rb, n, policy);
  for (std::size_t k = 0; k < n; ++k) out[k] = from_scaled(conv[k], e, prec[k]);
  return PadicSeries(std::move(out));
}

namespace {

// New coefficients [lo, hi) of `update` replace those of `base`; the rest of
// base is kept.
PadicSeries splice(const PadicSeries& base, const PadicSeries& update, std::size_t lo, std::size_t hi) {
  std::vector<PadicNumber> c(hi);
  for (std::size_t i = 0; i < lo; ++i) c[i] = base[i];
  for (std::size_t i = lo; i < hi; ++i) c[i] = update[i];
  return PadicSeries(std::move(c));
}

PadicSeries padded(const PadicSeries& s, std::size_t n) {
  std::vector<PadicNumber> c(n);
  for (std::size_t i = 0; i < std::min(n, s.order_bound()); ++i) c[i] = s[i];
  return PadicSeries(std::move(c));
}

}  // namespace

PadicSeries reciprocal(const PadicSeries& s, ExecPolicy policy) {
  const std::size_t n_final = s.order_bound();
  if (n_final == 0) return {};
  if (!s[0].is_nonzero())
    throw Error(ErrorCode::DivisionByIndistinguishableZero,
                "constant term " + s[0].to_string() + " is not certified nonzero");
  PadicSeries q = PadicSeries::constant(PadicNumber::from_integer(1, s[0].relprec()) / s[0], 1);
  std::size_t n = 1;
  while (n < n_final) {
    const std::size_t n2 = std::min(2 * n, n_final);
    // q <- q (2 - s q); only the new coefficients are taken from the step.
    const PadicSeries qn = padded(q, n2);
    PadicSeries sq = multiply(s, qn, n2, policy);
    const PadicSeries step = multiply(qn, -sq, n2, policy);
    q = splice(q, step, n, n2);
    n = n2;
  }
  return q;
}

PadicSeries inv_sqrt_unit(const PadicSeries& s, ExecPolicy policy) {
  const std::size_t n_final = s.order_bound();
  if (n_final == 0) return {};
  const PadicNumber root = padic_sqrt(s[0]);
  PadicSeries q = PadicSeries::constant(PadicNumber::from_integer(1, root.relprec()) / root, 1);
  std::size_t n = 1;
  while (n < n_final) {
    const std::size_t n2 = std::min(2 * n, n_final);
    // q <- q + q (1 - s q^2) / 2
    const PadicSeries qn = padded(q, n2);
    const PadicSeries q2 = multiply(qn, qn, n2, policy);
    const PadicSeries sq2 = multiply(s, q2, n2, policy);
    const PadicSeries corr = multiply(qn, -sq2, n2, policy).mul_pow2(-1);
    q = splice(q, corr, n, n2);
    n = n2;
  }
  return q;
}

PadicSeries sqrt_unit(const PadicSeries& s, ExecPolicy policy) {
  return multiply(s, inv_sqrt_unit(s, policy), s.order_bound(), policy);
}

PadicSeries compose(const PadicSeries& f, const PadicSeries& g, ExecPolicy policy) {
  if (g.order_bound() == 0) return {};
  if (!g[0].is_exact_zero())
    throw Error(ErrorCode::InvalidInput, "compose needs an inner series with zero constant term");
  const std::size_t n = std::min(f.order_bound(), g.order_bound());
  if (n == 0) return {};
  PadicSeries acc = PadicSeries::constant(f[n - 1], n);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = multiply(acc, g, n, policy);
    acc[0] = acc[0] + f[i];
  }
  return acc;
}

PadicSeries eval_poly(const IntPoly& p, const PadicSeries& s, std::int64_t relprec, ExecPolicy policy) {
  const std::size_t n = s.order_bound();
  if (p.is_zero() || n == 0) return PadicSeries(std::vector<PadicNumber>(n));
  PadicSeries acc = PadicSeries::constant(PadicNumber::from_integer(p.lead(), relprec), n);
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = multiply(acc, s, n, policy);
    acc[0] = acc[0] + PadicNumber::from_integer(p.coeff(static_cast<std::size_t>(i)), relprec);
  }
  return acc;
}

PadicSeries formal_integrate(const PadicSeries& s) {
  std::vector<PadicNumber> c(s.order_bound() + 1);
  for (std::size_t n = 1; n < c.size(); ++n) {
    const PadicNumber& a = s[n - 1];
    if (a.is_exact_zero()) continue;
    const mpz_class nn(static_cast<unsigned long>(n));
    // n itself is exact; its odd part only needs the relative precision of a.
    const std::int64_t rp = std::max<std::int64_t>(a.relprec(), 1) + 64;
    c[n] = a / PadicNumber::from_integer(nn, rp);
  }
  return PadicSeries(std::move(c));
}

PadicSeries differentiate(const PadicSeries& s) {
  if (s.order_bound() == 0) return {};
  std::vector<PadicNumber> c(s.order_bound() - 1);
  for (std::size_t n = 0; n < c.size(); ++n) {
    const PadicNumber& a = s[n + 1];
    if (a.is_exact_zero()) continue;
    const std::int64_t rp = std::max<std::int64_t>(a.relprec(), 1) + 64;
    c[n] = a * PadicNumber::from_integer(mpz_class(static_cast<unsigned long>(n + 1)), rp);
  }
  return PadicSeries(std::move(c));
}

PadicSeries fixed_point_invert(const PadicSeries& rhs, const SeriesMap& phi, const SeriesMap& dphi,
                               ExecPolicy policy) {
  const std::size_t n_final = rhs.order_bound();
  if (n_final == 0) return {};
  if (!rhs[0].is_exact_zero())
    throw Error(ErrorCode::InvalidInput, "fixed_point_invert needs rhs(0) = 0");
  // F(s) = s + phi(s) - rhs, Newton step s <- s - F(s) / (1 + phi'(s)).
  PadicSeries s(std::vector<PadicNumber>(1));
  std::size_t n = 1;
  while (n < n_final) {
    const std::size_t n2 = std::min(2 * n, n_final);
    const PadicSeries sn = padded(s, n2);
    const PadicSeries F = sn + phi(sn) - rhs.truncated(n2);
    PadicSeries dF = dphi(sn);
    dF[0] = dF[0] + PadicNumber::from_integer(1, std::max<std::int64_t>(dF[0].relprec(), 64));
    const PadicSeries step = sn - multiply(F, reciprocal(dF, policy), n2, policy);
    s = splice(s, step, n, n2);
    n = n2;
  }
  return s;
}

PadicSeries fixed_point_invert(const PadicSeries& rhs, const IntPoly& phi, std::int64_t relprec,
                               ExecPolicy policy) {
  if (sgn(phi.coeff(0)) != 0 || sgn(phi.coeff(1)) != 0)
    throw Error(ErrorCode::InvalidInput, "fixed_point_invert needs phi = O(s^2)");
  const IntPoly dphi = phi.derivative();
  return fixed_point_invert(
      rhs, [&](const PadicSeries& s) { return eval_poly(phi, s, relprec, policy); },
      [&](const PadicSeries& s) { return eval_poly(dphi, s, relprec, policy); }, policy);
}

PadicNumber evaluate_partial(const PadicSeries& s, const PadicNumber& t) {
  PadicNumber acc;
  for (std::size_t i = s.order_bound(); i-- > 0;) acc = acc * t + s[i];
  return acc;
}

std::int64_t tail_valuation(const PadicSeries& s, std::int64_t vt) {
  if (!s.law()) throw Error(ErrorCode::PrecisionExhausted, "series has no tail law");
  const ValuationLaw& law = *s.law();
  const auto N = static_cast<std::int64_t>(s.order_bound());
  // The per-term bound law(n) + n vt is convex in n; walk to its minimum.
  const long double slope = static_cast<long double>(law.num1) / static_cast<long double>(law.den) +
                            static_cast<long double>(vt);
  if (slope <= 0) throw Error(ErrorCode::PrecisionExhausted, "tail law does not force convergence");
  std::int64_t best = law.integer_bound(N) + N * vt;
  for (std::int64_t n = N + 1;; ++n) {
    const std::int64_t term = law.integer_bound(n) + n * vt;
    best = std::min(best, term);
    // Beyond this point every term grows by at least slope - log2(1 + 1/n) > 0,
    // and the rounding of the affine part costs at most one unit.
    const long double drift = law.minus_log2 ? std::log2(1.0L + 1.0L / static_cast<long double>(n)) : 0.0L;
    if (slope - drift > 0 && static_cast<long double>(term) > static_cast<long double>(best) + 2) break;
    if (n > N + 1000000) throw Error(ErrorCode::PrecisionExhausted, "tail bound search diverged");
  }
  return best;
}

PadicNumber evaluate(const PadicSeries& s, const PadicNumber& t) {
  const PadicNumber partial = evaluate_partial(s, t);
  if (t.is_exact_zero()) return s.order_bound() > 0 ? s[0] : PadicNumber::exact_zero();
  const std::int64_t vt = t.valuation();
  return partial.truncated(tail_valuation(s, vt));
}

}  // namespace selchab
