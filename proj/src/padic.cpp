#include "selchab/padic.hpp"

#include <algorithm>
#include <regex>

#include "selchab/error.hpp"

namespace selchab {

namespace {

void reduce_mod_2exp(mpz_class& x, std::int64_t bits) {
  mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
}

mpz_class inverse_mod_2exp(const mpz_class& unit, std::int64_t bits) {
  mpz_class mod = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t()) == 0) {
    if (bits == 0) return 0;
    throw Error(ErrorCode::InternalInconsistency, "unit is not invertible");
  }
  return inv;
}

}  // namespace

PadicNumber PadicNumber::zero(std::int64_t absprec) {
  if (absprec >= kInf) return {};
  PadicNumber r;
  r.state_ = State::InexactZero;
  r.val_ = absprec;
  return r;
}

PadicNumber PadicNumber::from_parts(std::int64_t valuation, const mpz_class& unit,
                                    std::int64_t relprec) {
  if (relprec <= 0) return zero(valuation);
  PadicNumber r;
  r.state_ = State::Nonzero;
  r.val_ = valuation;
  r.unit_ = unit;
  r.relprec_ = relprec;
  reduce_mod_2exp(r.unit_, relprec);
  if (mpz_tstbit(r.unit_.get_mpz_t(), 0) == 0)
    throw Error(ErrorCode::InternalInconsistency, "unit part must be odd");
  return r;
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, std::int64_t relprec) {
  if (sgn(n) == 0) return {};
  const auto v = v2(n);
  mpz_class u;
  mpz_fdiv_q_2exp(u.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
  return from_parts(v, u, relprec);
}

PadicNumber PadicNumber::from_rational(const mpz_class& num, const mpz_class& den,
                                       std::int64_t relprec) {
  if (sgn(den) == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  if (sgn(num) == 0) return {};
  const auto vn = v2(num), vd = v2(den);
  mpz_class un, ud;
  mpz_fdiv_q_2exp(un.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(vn));
  mpz_fdiv_q_2exp(ud.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(vd));
  reduce_mod_2exp(ud, relprec);
  mpz_class u = un * inverse_mod_2exp(ud, relprec);
  return from_parts(vn - vd, u, relprec);
}

PadicNumber PadicNumber::from_dyadic(const Dyadic& d, std::int64_t relprec) {
  if (d.is_zero()) return {};
  return from_parts(d.exponent(), d.numerator(), relprec);
}

std::int64_t PadicNumber::absprec() const {
  switch (state_) {
    case State::ExactZero:
      return kInf;
    case State::InexactZero:
      return val_;
    case State::Nonzero:
      break;
  }
  return val_ + relprec_;
}

mpz_class PadicNumber::signed_unit() const {
  if (state_ != State::Nonzero) return 0;
  mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(relprec_ - 1);
  if (unit_ > half) return unit_ - (mpz_class(1) << static_cast<mp_bitcnt_t>(relprec_));
  return unit_;
}

mpz_class PadicNumber::residue(std::int64_t bits) const {
  if (bits <= 0) return 0;
  if (absprec() < bits)
    throw Error(ErrorCode::PrecisionExhausted,
                "value " + to_string() + " is not known modulo 2^" + std::to_string(bits));
  if (state_ != State::Nonzero) return 0;
  if (val_ < 0) throw Error(ErrorCode::InvalidInput, "residue of a non-integral value");
  if (val_ >= bits) return 0;
  mpz_class r = unit_ << static_cast<mp_bitcnt_t>(val_);
  reduce_mod_2exp(r, bits);
  return r;
}

Dyadic PadicNumber::representative() const {
  if (state_ != State::Nonzero) return {};
  return Dyadic(unit_, val_);
}

PadicNumber PadicNumber::operator-() const {
  if (state_ != State::Nonzero) return *this;
  PadicNumber r = *this;
  mpz_class mod = mpz_class(1) << static_cast<mp_bitcnt_t>(relprec_);
  r.unit_ = mod - unit_;
  return r;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  using State = PadicNumber::State;
  if (a.state_ == State::ExactZero) return b;
  if (b.state_ == State::ExactZero) return a;
  const std::int64_t abs = std::min(a.absprec(), b.absprec());
  if (a.state_ == State::InexactZero && b.state_ == State::InexactZero)
    return PadicNumber::zero(abs);
  const std::int64_t v = std::min(a.val_, b.val_);
  if (v >= abs) return PadicNumber::zero(abs);
  const std::int64_t width = abs - v;
  mpz_class x = 0;
  auto accumulate = [&](const PadicNumber& p) {
    if (p.state_ != State::Nonzero) return;
    const std::int64_t shift = p.val_ - v;
    if (shift >= width) return;
    mpz_class t = p.unit_ << static_cast<mp_bitcnt_t>(shift);
    x += t;
  };
  accumulate(a);
  accumulate(b);
  reduce_mod_2exp(x, width);
  if (sgn(x) == 0) return PadicNumber::zero(abs);
  const std::int64_t s = v2(x);
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  PadicNumber r;
  r.state_ = State::Nonzero;
  r.val_ = v + s;
  r.relprec_ = abs - r.val_;
  r.unit_ = std::move(x);
  return r;
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  using State = PadicNumber::State;
  if (a.state_ == State::ExactZero || b.state_ == State::ExactZero) return {};
  if (a.state_ == State::InexactZero || b.state_ == State::InexactZero)
    return PadicNumber::zero(a.val_ + b.val_);
  PadicNumber r;
  r.state_ = State::Nonzero;
  r.val_ = a.val_ + b.val_;
  r.relprec_ = std::min(a.relprec_, b.relprec_);
  mpz_mul(r.unit_.get_mpz_t(), a.unit_.get_mpz_t(), b.unit_.get_mpz_t());
  reduce_mod_2exp(r.unit_, r.relprec_);
  return r;
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  using State = PadicNumber::State;
  if (b.state_ != State::Nonzero)
    throw Error(ErrorCode::DivisionByIndistinguishableZero,
                "divisor " + b.to_string() + " is not certified nonzero");
  if (a.state_ == State::ExactZero) return {};
  if (a.state_ == State::InexactZero) return PadicNumber::zero(a.val_ - b.val_);
  PadicNumber r;
  r.state_ = State::Nonzero;
  r.val_ = a.val_ - b.val_;
  r.relprec_ = std::min(a.relprec_, b.relprec_);
  mpz_class ub = b.unit_;
  reduce_mod_2exp(ub, r.relprec_);
  r.unit_ = a.unit_ * inverse_mod_2exp(ub, r.relprec_);
  reduce_mod_2exp(r.unit_, r.relprec_);
  return r;
}

PadicNumber PadicNumber::mul_pow2(std::int64_t k) const {
  if (state_ == State::ExactZero) return *this;
  PadicNumber r = *this;
  r.val_ += k;
  return r;
}

PadicNumber PadicNumber::truncated(std::int64_t absprec_limit) const {
  if (absprec_limit >= absprec()) return *this;
  if (state_ != State::Nonzero || val_ >= absprec_limit) return zero(absprec_limit);
  PadicNumber r = *this;
  r.relprec_ = absprec_limit - val_;
  reduce_mod_2exp(r.unit_, r.relprec_);
  return r;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.state_ != b.state_) return false;
  switch (a.state_) {
    case PadicNumber::State::ExactZero:
      return true;
    case PadicNumber::State::InexactZero:
      return a.val_ == b.val_;
    case PadicNumber::State::Nonzero:
      break;
  }
  return a.val_ == b.val_ && a.relprec_ == b.relprec_ && a.unit_ == b.unit_;
}

std::string PadicNumber::to_string() const {
  switch (state_) {
    case State::ExactZero:
      return "0";
    case State::InexactZero:
      return "O(2^" + std::to_string(val_) + ")";
    case State::Nonzero:
      break;
  }
  return "2^" + std::to_string(val_) + " * " + unit_.get_str() + " mod 2^" +
         std::to_string(relprec_);
}

PadicNumber PadicNumber::parse(std::string_view text) {
  static const std::regex kNonzero(R"(\s*2\^(-?\d+)\s*\*\s*(\d+)\s+mod\s+2\^(\d+)\s*)");
  static const std::regex kInexact(R"(\s*O\(2\^(-?\d+)\)\s*)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kNonzero)) {
    PadicNumber r = from_parts(std::stoll(m[1].str()), mpz_class(m[2].str()), std::stoll(m[3].str()));
    if (r.unit_ != mpz_class(m[2].str()))
      throw Error(ErrorCode::InvalidInput, "unit out of range in '" + s + "'");
    return r;
  }
  if (std::regex_match(s, m, kInexact)) return zero(std::stoll(m[1].str()));
  if (std::regex_match(s, std::regex(R"(\s*0\s*)"))) return {};
  throw Error(ErrorCode::InvalidInput, "cannot parse 2-adic number '" + s + "'");
}

PadicNumber padic_sqrt(const PadicNumber& a) {
  if (a.is_exact_zero()) return a;
  if (a.state() == PadicNumber::State::InexactZero) {
    const std::int64_t half = a.valuation() >= 0 ? a.valuation() / 2 : -((-a.valuation() + 1) / 2);
    return PadicNumber::zero(half);
  }
  if (a.valuation() % 2 != 0)
    throw Error(ErrorCode::NotASquare, a.to_string() + " has odd valuation");
  const std::int64_t r = a.relprec();
  if (r < 3)
    throw Error(ErrorCode::PrecisionExhausted,
                "need the unit modulo 8 to decide squareness of " + a.to_string());
  const mpz_class& u = a.unit();
  if (mpz_fdiv_ui(u.get_mpz_t(), 8) != 1)
    throw Error(ErrorCode::NotASquare, a.to_string() + " has unit not congruent to 1 mod 8");
  // Bit-by-bit Hensel lifting: keep root^2 = u mod 2^j.
  mpz_class root = 1;
  for (std::int64_t j = 3; j < r; ++j) {
    mpz_class diff = root * root - u;
    if (mpz_tstbit(diff.get_mpz_t(), static_cast<mp_bitcnt_t>(j)) != 0)
      root += mpz_class(1) << static_cast<mp_bitcnt_t>(j - 1);
  }
  const std::int64_t out_prec = r - 1;
  reduce_mod_2exp(root, out_prec);
  if (out_prec >= 2 && mpz_fdiv_ui(root.get_mpz_t(), 4) == 3) {
    root = (mpz_class(1) << static_cast<mp_bitcnt_t>(out_prec)) - root;
  }
  return PadicNumber::from_parts(a.valuation() / 2, root, out_prec);
}

}  // namespace selchab
