#include "selchab/gf2.hpp"

#include <algorithm>
#include <random>

#include "selchab/error.hpp"

namespace selchab {

Gf2Vec gf2_add(const Gf2Vec& a, const Gf2Vec& b) {
  Gf2Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] ^= a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] ^= b[i];
  return r;
}

bool gf2_is_zero(const Gf2Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

std::string gf2_to_string(const Gf2Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i] ? '1' : '0';
  }
  return s + ")";
}

bool Gf2Basis::insert(const Gf2Vec& v) {
  if (v.size() != dim_) throw Error(ErrorCode::InvalidInput, "vector length does not match basis");
  Gf2Vec r = v;
  Gf2Vec combo(gens_.size() + 1, 0);
  combo[gens_.size()] = 1;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (r[piv_[k]]) {
      for (std::size_t i = 0; i < dim_; ++i) r[i] ^= rows_[k][i];
      for (std::size_t i = 0; i < combos_[k].size(); ++i) combo[i] ^= combos_[k][i];
    }
  }
  const auto it = std::find(r.begin(), r.end(), 1);
  if (it == r.end()) return false;
  const auto p = static_cast<std::size_t>(it - r.begin());
  // Keep rows fully reduced at the new pivot.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k][p]) {
      for (std::size_t i = 0; i < dim_; ++i) rows_[k][i] ^= r[i];
      combos_[k].resize(combo.size(), 0);
      for (std::size_t i = 0; i < combo.size(); ++i) combos_[k][i] ^= combo[i];
    }
  }
  gens_.push_back(v);
  rows_.push_back(std::move(r));
  combos_.push_back(std::move(combo));
  piv_.push_back(p);
  return true;
}

std::optional<Gf2Vec> Gf2Basis::express(const Gf2Vec& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::InvalidInput, "vector length does not match basis");
  Gf2Vec r = v;
  Gf2Vec combo(gens_.size(), 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (r[piv_[k]]) {
      for (std::size_t i = 0; i < dim_; ++i) r[i] ^= rows_[k][i];
      for (std::size_t i = 0; i < combos_[k].size(); ++i) combo[i] ^= combos_[k][i];
    }
  }
  if (!gf2_is_zero(r)) return std::nullopt;
  return combo;
}

std::size_t gf2_rank(const std::vector<Gf2Vec>& vectors, std::size_t dim) {
  Gf2Basis b(dim);
  for (const auto& v : vectors) b.insert(v);
  return b.rank();
}

// ---------------------------------------------------------------------------

Gf2Poly Gf2Poly::from_bits(std::uint64_t bits) {
  Gf2Poly p;
  p.w_ = {bits};
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::monomial(std::size_t degree) {
  Gf2Poly p;
  p.set_coeff(degree, true);
  return p;
}

Gf2Poly Gf2Poly::from_intpoly(const IntPoly& f) {
  Gf2Poly p;
  for (int i = 0; i <= f.degree(); ++i)
    if (mpz_odd_p(f.coeff(static_cast<std::size_t>(i)).get_mpz_t())) p.set_coeff(static_cast<std::size_t>(i), true);
  return p;
}

int Gf2Poly::degree() const {
  for (std::size_t k = w_.size(); k-- > 0;) {
    if (w_[k] != 0) return static_cast<int>(k * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(w_[k])));
  }
  return -1;
}

bool Gf2Poly::coeff(std::size_t i) const {
  const std::size_t k = i / 64;
  return k < w_.size() && ((w_[k] >> (i % 64)) & 1U) != 0;
}

void Gf2Poly::set_coeff(std::size_t i, bool value) {
  const std::size_t k = i / 64;
  if (k >= w_.size()) {
    if (!value) return;
    w_.resize(k + 1, 0);
  }
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value)
    w_[k] |= bit;
  else
    w_[k] &= ~bit;
  trim();
}

void Gf2Poly::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly r;
  r.w_.assign(std::max(a.w_.size(), b.w_.size()), 0);
  for (std::size_t i = 0; i < a.w_.size(); ++i) r.w_[i] ^= a.w_[i];
  for (std::size_t i = 0; i < b.w_.size(); ++i) r.w_[i] ^= b.w_[i];
  r.trim();
  return r;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly r;
  const int da = a.degree(), db = b.degree();
  if (da < 0 || db < 0) return r;
  r.w_.assign(static_cast<std::size_t>(da + db) / 64 + 1, 0);
  for (int i = 0; i <= da; ++i) {
    if (!a.coeff(static_cast<std::size_t>(i))) continue;
    // Shifted copy of b.
    const std::size_t ws = static_cast<std::size_t>(i) / 64, bs = static_cast<std::size_t>(i) % 64;
    for (std::size_t k = 0; k < b.w_.size(); ++k) {
      r.w_[k + ws] ^= b.w_[k] << bs;
      if (bs != 0 && k + ws + 1 < r.w_.size()) r.w_[k + ws + 1] ^= b.w_[k] >> (64 - bs);
    }
  }
  r.trim();
  return r;
}

bool operator==(const Gf2Poly& a, const Gf2Poly& b) { return a.w_ == b.w_; }

bool operator<(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const bool ca = a.coeff(static_cast<std::size_t>(i)), cb = b.coeff(static_cast<std::size_t>(i));
    if (ca != cb) return cb;
  }
  return false;
}

Gf2Poly Gf2Poly::derivative() const {
  Gf2Poly r;
  for (int i = 1; i <= degree(); i += 2)
    if (coeff(static_cast<std::size_t>(i))) r.set_coeff(static_cast<std::size_t>(i - 1), true);
  return r;
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(static_cast<std::size_t>(i))) continue;
    if (!s.empty()) s += " + ";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += "x";
    else
      s += "x^" + std::to_string(i);
  }
  return s;
}

Gf2DivMod divmod(const Gf2Poly& a, const Gf2Poly& b) {
  const int db = b.degree();
  if (db < 0) throw Error(ErrorCode::InvalidInput, "division by zero polynomial over F_2");
  Gf2Poly q, r = a;
  for (int d = r.degree(); d >= db; d = r.degree()) {
    const auto shift = static_cast<std::size_t>(d - db);
    q.set_coeff(shift, true);
    r = r + b * Gf2Poly::monomial(shift);
  }
  return {q, r};
}

Gf2Poly operator%(const Gf2Poly& a, const Gf2Poly& b) { return divmod(a, b).remainder; }

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::pair<Gf2Poly, Gf2Poly> inverse_mod(const Gf2Poly& a, const Gf2Poly& m) {
  Gf2Poly r0 = m, r1 = a % m, s0, s1 = Gf2Poly::from_bits(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Gf2Poly s = s0 + q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  return {r0, s0 % m};
}

Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) { return (a * b) % m; }

Gf2Poly powmod(const Gf2Poly& a, const mpz_class& e, const Gf2Poly& m) {
  Gf2Poly result = Gf2Poly::from_bits(1) % m;
  Gf2Poly base = a % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
  }
  return result;
}

bool is_squarefree(const Gf2Poly& f) { return gcd(f, f.derivative()).is_one(); }

namespace {

void equal_degree_split(const Gf2Poly& g, int d, std::mt19937_64& rng, std::vector<Gf2Poly>& out) {
  const int n = g.degree();
  if (n == d) {
    out.push_back(g);
    return;
  }
  for (;;) {
    Gf2Poly a;
    for (int i = 0; i < n; ++i)
      if (rng() & 1U) a.set_coeff(static_cast<std::size_t>(i), true);
    if (a.degree() < 1) continue;
    // Trace map a + a^2 + ... + a^(2^(d-1)) lands in F_2 on each factor.
    Gf2Poly t = a, p = a;
    for (int i = 1; i < d; ++i) {
      p = mulmod(p, p, g);
      t = t + p;
    }
    Gf2Poly h = gcd(g, t);
    if (h.degree() > 0 && h.degree() < n) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(divmod(g, h).quotient, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Gf2Poly> factor_squarefree(const Gf2Poly& f, std::uint64_t seed) {
  if (f.degree() < 1) return {};
  if (!is_squarefree(f)) throw Error(ErrorCode::NotSquarefreeMod2, f.to_string() + " is not squarefree");
  std::mt19937_64 rng(seed);
  std::vector<Gf2Poly> factors;
  Gf2Poly rest = f;
  const Gf2Poly x = Gf2Poly::monomial(1);
  Gf2Poly xp = x;  // x^(2^d) mod rest
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    xp = mulmod(xp, xp, rest);
    Gf2Poly g = gcd(rest, xp + x);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, factors);
      rest = divmod(rest, g).quotient;
      xp = xp % rest;
    }
  }
  if (rest.degree() > 0) factors.push_back(rest);
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace selchab
