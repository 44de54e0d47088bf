#include "selchab/etale.hpp"

#include <sstream>

#include "selchab/error.hpp"

namespace selchab {

namespace {

std::uint64_t low_word(const mpz_class& v) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), 64);
  std::uint64_t out = 0;
  // Two 32-bit halves keep this independent of the limb size.
  mpz_class hi = r >> 32;
  mpz_class lo = r - (hi << 32);
  out = (static_cast<std::uint64_t>(hi.get_ui()) << 32) | static_cast<std::uint64_t>(lo.get_ui());
  return out;
}

}  // namespace

ResidueAlgebra::ResidueAlgebra(const IntPoly& f, unsigned bits) : bits_(bits) {
  if (!f.is_monic() || f.degree() < 1) throw Error(ErrorCode::InvalidInput, "algebra needs a monic polynomial");
  if (bits < 1 || bits > 64) throw Error(ErrorCode::InvalidInput, "residue algebra precision must be 1..64 bits");
  n_ = static_cast<std::size_t>(f.degree());
  f_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) f_[i] = mask(low_word(f.coeff(i)));
  fbar_ = Gf2Poly::from_intpoly(f);
}

AlgebraElement ResidueAlgebra::from_int(long v) const {
  AlgebraElement a = zero();
  a.c[0] = mask(static_cast<std::uint64_t>(v));
  return a;
}

AlgebraElement ResidueAlgebra::theta() const {
  if (n_ == 1) return scale(AlgebraElement{{f_[0]}}, -1);
  AlgebraElement a = zero();
  a.c[1] = 1;
  return a;
}

AlgebraElement ResidueAlgebra::from_poly(const IntPoly& p) const {
  AlgebraElement acc = zero();
  const AlgebraElement th = theta();
  for (int i = p.degree(); i >= 0; --i) {
    acc = mul(acc, th);
    acc.c[0] = mask(acc.c[0] + low_word(p.coeff(static_cast<std::size_t>(i))));
  }
  return acc;
}

AlgebraElement ResidueAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < n_; ++i) r.c[i] = mask(a.c[i] + b.c[i]);
  return r;
}

AlgebraElement ResidueAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < n_; ++i) r.c[i] = mask(a.c[i] - b.c[i]);
  return r;
}

AlgebraElement ResidueAlgebra::scale(const AlgebraElement& a, std::int64_t s) const {
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < n_; ++i) r.c[i] = mask(a.c[i] * static_cast<std::uint64_t>(s));
  return r;
}

AlgebraElement ResidueAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  // x^n = -(f_0 + ... + f_{n-1} x^{n-1})
  for (std::size_t k = prod.size(); k-- > n_;) {
    const std::uint64_t top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n_; ++i) prod[k - n_ + i] -= top * f_[i];
  }
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < n_; ++i) r.c[i] = mask(prod[i]);
  return r;
}

AlgebraElement ResidueAlgebra::pow(const AlgebraElement& a, const mpz_class& e) const {
  if (sgn(e) < 0) return pow(inverse(a), -e);
  AlgebraElement result = from_int(1);
  const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = nbits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

Gf2Poly ResidueAlgebra::reduce_mod2(const AlgebraElement& a) const {
  Gf2Poly p;
  for (std::size_t i = 0; i < n_; ++i)
    if (a.c[i] & 1U) p.set_coeff(i, true);
  return p;
}

AlgebraElement ResidueAlgebra::lift(const Gf2Poly& p) const {
  AlgebraElement a = zero();
  for (std::size_t i = 0; i < n_; ++i) a.c[i] = p.coeff(i) ? 1 : 0;
  return a;
}

AlgebraElement ResidueAlgebra::inverse(const AlgebraElement& a) const {
  auto [gcd_poly, s] = inverse_mod(reduce_mod2(a), fbar_);
  if (!gcd_poly.is_one()) throw Error(ErrorCode::NotAUnit, to_string(a) + " is not a unit");
  // Newton lifting x <- x (2 - a x) doubles the number of correct bits.
  AlgebraElement x = lift(s);
  for (unsigned known = 1; known < bits_; known *= 2) {
    const AlgebraElement ax = mul(a, x);
    x = mul(x, sub(from_int(2), ax));
  }
  return x;
}

std::string ResidueAlgebra::to_string(const AlgebraElement& a) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << a.c[i];
  os << "] mod 2^" << bits_;
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<int> EtaleData::factor_degrees() const {
  std::vector<int> d;
  for (const auto& p : fbar_factors) d.push_back(p.degree());
  return d;
}

Gf2Vec trace_vector(const EtaleData& e, const Gf2Poly& a) {
  Gf2Vec v(e.m(), 0);
  const Gf2Poly r = a % e.fbar;
  for (int k = 0; k <= r.degree(); ++k)
    if (r.coeff(static_cast<std::size_t>(k))) v = gf2_add(v, e.trace_table[static_cast<std::size_t>(k)]);
  return v;
}

int sum_trace(const EtaleData& e, const Gf2Poly& a) {
  int s = 0;
  for (auto x : trace_vector(e, a)) s ^= x;
  return s;
}

namespace {

// Tr_{F/F_2} of x^k in F = F_2[x]/(p).
int field_trace_of_power(const Gf2Poly& p, int k) {
  const Gf2Poly xk = Gf2Poly::monomial(static_cast<std::size_t>(k)) % p;
  Gf2Poly t = xk, s = xk;
  for (int i = 1; i < p.degree(); ++i) {
    s = mulmod(s, s, p);
    t = t + s;
  }
  if (t.degree() > 0) throw Error(ErrorCode::InternalInconsistency, "trace did not land in F_2");
  return t.is_one() ? 1 : 0;
}

// 1 + scale * theta^k in the residue algebra.
AlgebraElement one_plus(const ResidueAlgebra& R, std::int64_t scale, std::size_t k) {
  AlgebraElement a = R.from_int(1);
  a.c[k] = (a.c[k] + static_cast<std::uint64_t>(scale)) & 7U;
  return a;
}

Gf2Vec trace_of_bits(const EtaleData& e, const Gf2Vec& bits) {
  Gf2Vec v(e.m(), 0);
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) v = gf2_add(v, e.trace_table[k]);
  return v;
}

}  // namespace

SquareClass square_class_coords(const EtaleData& e, const AlgebraElement& u_in) {
  const ResidueAlgebra R = e.algebra(3);
  const std::size_t n = e.theta_dim();
  if (u_in.c.size() != n) throw Error(ErrorCode::InvalidInput, "element has the wrong length");
  AlgebraElement u = R.zero();
  for (std::size_t i = 0; i < n; ++i) u.c[i] = u_in.c[i] & 7U;
  if (!gcd(R.reduce_mod2(u), e.fbar).is_one()) throw Error(ErrorCode::NotAUnit, R.to_string(u) + " is not a unit");

  SquareClass coords(e.dim_h2(), 0);
  // An odd power lands in the principal units without changing the class.
  AlgebraElement w = R.pow(u, e.odd_exponent);
  if ((w.c[0] & 1U) != 1U) throw Error(ErrorCode::InternalInconsistency, "odd power is not a principal unit");
  for (std::size_t i = 1; i < n; ++i)
    if (w.c[i] & 1U) throw Error(ErrorCode::InternalInconsistency, "odd power is not a principal unit");

  // Layer 1 + 2 beta: coordinates are the bits of beta mod 2.
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t b = ((w.c[i] - (i == 0 ? 1U : 0U)) >> 1) & 1U;
    coords[i] = static_cast<std::uint8_t>(b);
    if (b) w = R.mul(w, one_plus(R, 2, i));
  }
  // Layer 1 + 4 alpha: coordinates from Tr(alpha).
  Gf2Vec alpha(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t r = w.c[i] - (i == 0 ? 1U : 0U);
    if ((r & 3U) != 0) throw Error(ErrorCode::InternalInconsistency, "layer 1 + 2 beta not cleared");
    alpha[i] = static_cast<std::uint8_t>((r >> 2) & 1U);
  }
  const Gf2Vec tr = trace_of_bits(e, alpha);
  Gf2Basis bp(e.m());
  for (int k : e.bprime_exponents) bp.insert(e.trace_table[static_cast<std::size_t>(k)]);
  const auto c = bp.express(tr);
  if (!c) throw Error(ErrorCode::InternalInconsistency, "trace basis does not span");
  for (std::size_t j = 0; j < e.m(); ++j) {
    coords[n + j] = (*c)[j];
    if ((*c)[j]) w = R.mul(w, one_plus(R, 4, static_cast<std::size_t>(e.bprime_exponents[j])));
  }
  // What is left must be 1 + 4 alpha' with Tr(alpha') = 0, a square.
  Gf2Vec rest(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t r = w.c[i] - (i == 0 ? 1U : 0U);
    if ((r & 3U) != 0) throw Error(ErrorCode::InternalInconsistency, "residual is not 1 mod 4");
    rest[i] = static_cast<std::uint8_t>((r >> 2) & 1U);
  }
  if (!gf2_is_zero(trace_of_bits(e, rest)))
    throw Error(ErrorCode::InternalInconsistency, "residual is not a square");
  return coords;
}

SquareClass square_class_coords(const EtaleData& e, const IntPoly& u_of_theta) {
  return square_class_coords(e, e.algebra(3).from_poly(u_of_theta));
}

bool is_square_unit(const EtaleData& e, const AlgebraElement& u) {
  return gf2_is_zero(square_class_coords(e, u));
}

SquareClass delta2_combination(const EtaleData& e, const Gf2Vec& coeffs) {
  if (coeffs.size() != e.delta2_basis.size())
    throw Error(ErrorCode::InvalidInput, "delta2 coordinate vector has length " + std::to_string(coeffs.size()) +
                                             ", expected " + std::to_string(e.delta2_basis.size()));
  SquareClass s(e.dim_h2(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) s = gf2_add(s, e.delta2_basis[i].coords);
  return s;
}

std::optional<Gf2Vec> delta2_coordinates(const EtaleData& e, const SquareClass& c) {
  Gf2Basis b(e.dim_h2());
  for (const auto& gen : e.delta2_basis) b.insert(gen.coords);
  return b.express(c);
}

EtaleData build_etale(const IntPoly& f) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidInput, "f must be monic");
  if (f.degree() < 3 || f.degree() % 2 == 0) throw Error(ErrorCode::InvalidInput, "f must have odd degree 2g+1 >= 3");
  EtaleData e;
  e.f = f;
  e.g = (f.degree() - 1) / 2;
  e.fbar = Gf2Poly::from_intpoly(f);
  e.fbar_factors = factor_squarefree(e.fbar);  // throws NotSquarefreeMod2
  const std::size_t n = e.theta_dim();
  const std::size_t m = e.m();

  e.trace_table.assign(n, Gf2Vec(m, 0));
  e.odd_exponent = 1;
  for (std::size_t j = 0; j < m; ++j) {
    const Gf2Poly& p = e.fbar_factors[j];
    for (std::size_t k = 0; k < n; ++k) e.trace_table[k][j] = static_cast<std::uint8_t>(field_trace_of_power(p, static_cast<int>(k)));
    mpz_class order = (mpz_class(1) << static_cast<mp_bitcnt_t>(p.degree())) - 1;
    mpz_lcm(e.odd_exponent.get_mpz_t(), e.odd_exponent.get_mpz_t(), order.get_mpz_t());
  }

  // B': greedy monomials whose traces span F_2^m.
  Gf2Basis tb(m);
  for (std::size_t k = 0; k < n && tb.rank() < m; ++k)
    if (tb.insert(e.trace_table[k])) e.bprime_exponents.push_back(static_cast<int>(k));
  if (tb.rank() != m) throw Error(ErrorCode::InternalInconsistency, "trace map is not surjective");

  // I: greedy over odd d of Tr(theta_bar^-d), all of which lie in ker(sum Tr).
  auto [gg, theta_inv] = inverse_mod(Gf2Poly::monomial(1), e.fbar);
  if (!gg.is_one()) throw Error(ErrorCode::InternalInconsistency, "theta is not a unit mod 2");
  Gf2Basis ib(m);
  Gf2Poly pw = Gf2Poly::from_bits(1);
  for (int d = 1; d <= 2 * e.g; ++d) {
    pw = mulmod(pw, theta_inv, e.fbar);
    const Gf2Vec tv = trace_vector(e, pw);
    int s = 0;
    for (auto x : tv) s ^= x;
    if (s != 0) throw Error(ErrorCode::InternalInconsistency, "sum of traces of theta^-" + std::to_string(d) + " is 1");
    if (d % 2 == 1 && ib.rank() + 1 < m && ib.insert(tv)) e.I_set.push_back(d);
  }
  if (ib.rank() + 1 != m) throw Error(ErrorCode::InternalInconsistency, "could not choose the set I");

  // delta2 generators 1 - 2(-theta)^-d, d = 1..g, and 1 - 4(-theta)^-d, d in I.
  const ResidueAlgebra R = e.algebra(3);
  const AlgebraElement minus_theta_inv = R.inverse(R.scale(R.theta(), -1));
  Gf2Basis db(e.dim_h2());
  auto add_gen = [&](int d, int scale) {
    Delta2Generator gen;
    gen.d = d;
    gen.scale = scale;
    gen.representative = R.sub(R.from_int(1), R.scale(R.pow(minus_theta_inv, d), scale));
    gen.coords = square_class_coords(e, gen.representative);
    if (!db.insert(gen.coords)) throw Error(ErrorCode::InternalInconsistency, "delta2 generators are dependent");
    e.delta2_basis.push_back(std::move(gen));
  };
  for (int d = 1; d <= e.g; ++d) add_gen(d, 2);
  for (int d : e.I_set) add_gen(d, 4);
  return e;
}

}  // namespace selchab
