#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "selchab/intpoly.hpp"
#include "selchab/kernels.hpp"

namespace selchab {

/// Element of Q_2 known to a finite absolute precision.
///
/// Three states are kept apart: an exact zero, a value indistinguishable from
/// zero at its precision (O(2^a)), and a certified nonzero value
/// 2^valuation * unit + O(2^(valuation + relprec)) with unit odd and
/// 0 < unit < 2^relprec.
class PadicNumber {
 public:
  static constexpr std::int64_t kDefaultRelprec = 64;
  static constexpr std::int64_t kInf = kernels::kInf;

  enum class State { ExactZero, InexactZero, Nonzero };

  PadicNumber() = default;  // exact zero

  static PadicNumber exact_zero() { return {}; }
  static PadicNumber zero(std::int64_t absprec);
  static PadicNumber from_integer(const mpz_class& n, std::int64_t relprec = kDefaultRelprec);
  static PadicNumber from_rational(const mpz_class& num, const mpz_class& den,
                                   std::int64_t relprec = kDefaultRelprec);
  static PadicNumber from_dyadic(const Dyadic& d, std::int64_t relprec = kDefaultRelprec);
  /// 2^valuation * unit with unit odd (reduced mod 2^relprec here).
  static PadicNumber from_parts(std::int64_t valuation, const mpz_class& unit, std::int64_t relprec);

  State state() const { return state_; }
  bool is_exact_zero() const { return state_ == State::ExactZero; }
  /// True for exact zeros and for values swallowed by their precision.
  bool is_zero() const { return state_ != State::Nonzero; }
  bool is_nonzero() const { return state_ == State::Nonzero; }

  /// Valuation of a certified nonzero value. For O(2^a) this is the lower
  /// bound a; for an exact zero it is kInf.
  std::int64_t valuation() const { return state_ == State::ExactZero ? kInf : val_; }
  const mpz_class& unit() const { return unit_; }
  std::int64_t relprec() const { return state_ == State::Nonzero ? relprec_ : 0; }
  std::int64_t absprec() const;
  /// Unit representative in (-2^(relprec-1), 2^(relprec-1)].
  mpz_class signed_unit() const;

  /// Certified to lie in Z_2.
  bool is_integral() const { return state_ == State::ExactZero || val_ >= 0; }
  /// Value mod 2^bits as an integer in [0, 2^bits). Requires an integral value
  /// with absprec >= bits.
  mpz_class residue(std::int64_t bits) const;
  /// Exact dyadic representative (unit * 2^valuation, or 0).
  Dyadic representative() const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& b) { return *this = *this + b; }
  PadicNumber& operator-=(const PadicNumber& b) { return *this = *this - b; }
  PadicNumber& operator*=(const PadicNumber& b) { return *this = *this * b; }

  /// Exact multiplication by 2^k.
  PadicNumber mul_pow2(std::int64_t k) const;
  /// Drops precision to at most the given absolute precision.
  PadicNumber truncated(std::int64_t absprec) const;

  /// Representation-level equality (same state, valuation, unit and precision).
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);
  /// Agreement at the common precision: a - b is indistinguishable from zero.
  bool agrees_with(const PadicNumber& other) const { return (*this - other).is_zero(); }

  /// "0", "O(2^a)" or "2^v * u mod 2^r".
  std::string to_string() const;
  static PadicNumber parse(std::string_view text);

 private:
  State state_ = State::ExactZero;
  std::int64_t val_ = 0;  // valuation, or absprec for an inexact zero
  mpz_class unit_{0};
  std::int64_t relprec_ = 0;
};

/// Square root in Q_2; the root's unit part is 1 mod 4. The root carries one
/// bit less relative precision than the input.
PadicNumber padic_sqrt(const PadicNumber& a);

}  // namespace selchab
