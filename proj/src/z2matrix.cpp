#include "selchab/z2matrix.hpp"

#include <algorithm>
#include <limits>

#include "selchab/error.hpp"

namespace selchab {

namespace {

mpq_class to_mpq(const Dyadic& d) {
  mpq_class q(d.numerator());
  if (d.exponent() >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(d.exponent()));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-d.exponent()));
  }
  return q;
}

std::optional<Dyadic> from_mpq(const mpq_class& q) {
  if (sgn(q) == 0) return Dyadic();
  const mpz_class& den = q.get_den();
  const std::int64_t k = v2(den);
  mpz_class odd;
  mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  if (odd != 1) return std::nullopt;
  return Dyadic(q.get_num(), -k);
}

bool is_2adic_integer(const mpq_class& q) { return sgn(q) == 0 || mpz_odd_p(q.get_den().get_mpz_t()); }

bool is_2adic_unit(const mpq_class& q) {
  return sgn(q) != 0 && mpz_odd_p(q.get_den().get_mpz_t()) && mpz_odd_p(q.get_num().get_mpz_t());
}

std::vector<std::vector<mpq_class>> to_rational(const DyadicMatrix& m) {
  std::vector<std::vector<mpq_class>> r(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = to_mpq(m.at(i, j));
  return r;
}

mpq_class det_rational(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

DyadicMatrix DyadicMatrix::identity(std::size_t n) {
  DyadicMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Dyadic(1);
  return m;
}

DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidInput, "dimension mismatch in matrix product");
  DyadicMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Dyadic s;
      for (std::size_t k = 0; k < a.cols_; ++k) s = s + a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

bool DyadicMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Dyadic& d) { return d.is_integral(); });
}

std::int64_t DyadicMatrix::min_valuation() const {
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (const auto& d : a_)
    if (!d.is_zero()) m = std::min(m, d.valuation());
  return m == std::numeric_limits<std::int64_t>::max() ? 0 : m;
}

mpq_class DyadicMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  return det_rational(to_rational(*this));
}

std::optional<std::vector<std::vector<mpq_class>>> DyadicMatrix::inverse_rational() const {
  if (rows_ != cols_) throw Error(ErrorCode::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  auto a = to_rational(*this);
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const mpq_class piv = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::optional<DyadicMatrix> DyadicMatrix::inverse() const {
  const auto inv = inverse_rational();
  if (!inv) return std::nullopt;
  DyadicMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      auto d = from_mpq((*inv)[i][j]);
      if (!d) return std::nullopt;
      m.at(i, j) = *d;
    }
  return m;
}

std::vector<std::vector<std::string>> DyadicMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j).to_string();
  return out;
}

DyadicMatrix DyadicMatrix::from_strings(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  DyadicMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::InvalidInput, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Dyadic::parse(rows[i][j]);
  }
  return m;
}

// ---------------------------------------------------------------------------

Z2Matrix Z2Matrix::from_integers(const std::vector<std::vector<long>>& rows, std::int64_t relprec) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Z2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = PadicNumber::from_integer(rows[i][j], relprec);
  return m;
}

std::int64_t Z2Matrix::min_absprec() const {
  std::int64_t m = PadicNumber::kInf;
  for (const auto& x : a_) m = std::min(m, x.absprec());
  return m;
}

std::int64_t Z2Matrix::max_relprec() const {
  std::int64_t m = 0;
  for (const auto& x : a_) m = std::max(m, x.relprec());
  return m;
}

Z2Matrix Z2Matrix::truncated(std::int64_t absprec) const {
  Z2Matrix m = *this;
  for (auto& x : m.a_) x = x.truncated(absprec);
  return m;
}

std::vector<std::vector<std::string>> Z2Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j).to_string();
  return out;
}

Z2Matrix Z2Matrix::from_strings(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Z2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::InvalidInput, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = PadicNumber::parse(rows[i][j]);
  }
  return m;
}

PadicNumber to_padic(const Dyadic& d, std::int64_t relprec) {
  if (d.is_zero()) return {};
  const auto bits = static_cast<std::int64_t>(mpz_sizeinbase(d.numerator().get_mpz_t(), 2)) + 2;
  return PadicNumber::from_dyadic(d, std::max(relprec, bits));
}

Z2Matrix operator*(const Z2Matrix& a, const DyadicMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidInput, "dimension mismatch in matrix product");
  const std::int64_t rp = a.max_relprec() + 64;
  Z2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      PadicNumber s;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (b.at(k, j).is_zero()) continue;
        s += a.at(i, k) * to_padic(b.at(k, j), rp);
      }
      c.at(i, j) = s;
    }
  return c;
}

EchelonResult echelonize_over_Z2(const Z2Matrix& L) {
  const std::size_t R = L.rows(), g = L.cols();
  if (R < g) throw Error(ErrorCode::NotFullRank, "fewer rows than columns");
  Z2Matrix M = L;
  DyadicMatrix U = DyadicMatrix::identity(g);
  DyadicMatrix Uinv = DyadicMatrix::identity(g);
  std::vector<bool> used(R, false);
  EchelonResult res;

  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(M.at(r, c1), M.at(r, c2));
    for (std::size_t r = 0; r < g; ++r) std::swap(U.at(r, c1), U.at(r, c2));
    for (std::size_t c = 0; c < g; ++c) std::swap(Uinv.at(c1, c), Uinv.at(c2, c));
  };

  for (std::size_t i = 0; i < g; ++i) {
    // Pivot search among unused rows and columns >= i.
    std::int64_t best = PadicNumber::kInf;
    std::size_t br = R, bc = g;
    std::int64_t uncertain = PadicNumber::kInf;  // smallest precision of an O(2^a) entry
    bool any_inexact = false;
    for (std::size_t c = i; c < g; ++c)
      for (std::size_t r = 0; r < R; ++r) {
        if (used[r]) continue;
        const PadicNumber& x = M.at(r, c);
        if (x.is_nonzero()) {
          if (x.valuation() < best) {
            best = x.valuation();
            br = r;
            bc = c;
          }
        } else if (!x.is_exact_zero()) {
          any_inexact = true;
          uncertain = std::min(uncertain, x.absprec());
        }
      }
    if (br == R) {
      if (any_inexact)
        throw Error(ErrorCode::InsufficientPrecision,
                    "no certified pivot in column " + std::to_string(i));
      throw Error(ErrorCode::NotFullRank, "remaining block is exactly zero");
    }
    if (uncertain < best)
      throw Error(ErrorCode::InsufficientPrecision,
                  "pivot valuation " + std::to_string(best) + " not certified minimal (entry known only to 2^" +
                      std::to_string(uncertain) + ")");
    // Ties: the scan visits columns in order, then rows, and keeps the first
    // minimum, which is the lowest column and then the lowest row.
    swap_cols(i, bc);
    used[br] = true;
    res.pivot_rows.push_back(br);
    res.pivot_valuations.push_back(best);
    const PadicNumber pivot = M.at(br, i);
    for (std::size_t c = i + 1; c < g; ++c) {
      const PadicNumber& x = M.at(br, c);
      if (x.is_exact_zero()) continue;
      const PadicNumber q = x / pivot;
      if (!q.is_nonzero()) continue;
      const Dyadic qd(q.signed_unit(), q.valuation());
      if (!qd.is_integral()) throw Error(ErrorCode::InternalInconsistency, "non-integral elimination factor");
      const PadicNumber qp = to_padic(qd, M.max_relprec() + 64);
      for (std::size_t r = 0; r < R; ++r) {
        if (M.at(r, i).is_exact_zero()) continue;
        M.at(r, c) -= qp * M.at(r, i);
      }
      for (std::size_t r = 0; r < g; ++r) U.at(r, c) = U.at(r, c) - qd * U.at(r, i);
      for (std::size_t k = 0; k < g; ++k) Uinv.at(i, k) = Uinv.at(i, k) + qd * Uinv.at(c, k);
    }
  }
  for (std::size_t i = 0; i < g; ++i) {
    const std::int64_t v = res.pivot_valuations[i];
    for (std::size_t r = 0; r < R; ++r) M.at(r, i) = M.at(r, i).mul_pow2(-v);
    for (std::size_t r = 0; r < g; ++r) U.at(r, i) = U.at(r, i).shifted(-v);
    for (std::size_t k = 0; k < g; ++k) Uinv.at(i, k) = Uinv.at(i, k).shifted(v);
  }
  res.basis = Z2Matrix(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t c = 0; c < g; ++c) res.basis.at(i, c) = M.at(res.pivot_rows[i], c);
  res.U = std::move(U);
  res.U_inv = std::move(Uinv);
  const LatticeCertificate cert = certify_lattice(L, res.U);
  if (!cert.ok) throw Error(ErrorCode::InsufficientPrecision, "lattice certificate failed: " + cert.detail);
  return res;
}

std::vector<Gf2Vec> reduce_rows_mod2(const Z2Matrix& M) {
  std::vector<Gf2Vec> rows(M.rows(), Gf2Vec(M.cols(), 0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const mpz_class r = M.at(i, j).residue(1);
      rows[i][j] = static_cast<std::uint8_t>(r.get_ui() & 1U);
    }
  return rows;
}

LatticeCertificate certify_lattice(const Z2Matrix& L, const DyadicMatrix& U) {
  LatticeCertificate cert;
  if (L.cols() != U.rows() || U.rows() != U.cols()) {
    cert.detail = "dimension mismatch";
    return cert;
  }
  const Z2Matrix M = L * U;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const PadicNumber& x = M.at(i, j);
      if (x.valuation() < 0 || x.absprec() < 1) {
        cert.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + x.to_string() +
                      " is not certified integral modulo 2";
        return cert;
      }
    }
  cert.integral = true;
  cert.f2_rank = gf2_rank(reduce_rows_mod2(M), M.cols());
  cert.ok = cert.f2_rank == M.cols();
  if (!cert.ok) cert.detail = "rank of L*U mod 2 is " + std::to_string(cert.f2_rank);
  return cert;
}

bool same_lattice(const DyadicMatrix& U1, const DyadicMatrix& U2) {
  if (U1.rows() != U2.rows() || U1.cols() != U2.cols()) return false;
  const auto inv = U1.inverse_rational();
  if (!inv) return false;
  const std::size_t n = U1.rows();
  std::vector<std::vector<mpq_class>> prod(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < n; ++k) s += (*inv)[i][k] * to_mpq(U2.at(k, j));
      if (!is_2adic_integer(s)) return false;
      prod[i][j] = s;
    }
  return is_2adic_unit(det_rational(prod));
}

}  // namespace selchab
