#pragma once

// Exact integer arithmetic: dense univariate polynomials over Z with GMP
// coefficients, exact dyadic rationals, and the subresultant resultant.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "selchab/kernels.hpp"

namespace selchab {

/// 2-adic valuation of a nonzero integer.
std::int64_t v2(const mpz_class& n);

/// Exact rational number of the form num * 2^exp. Normalized so that num is
/// odd, or num == 0 and exp == 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long n) : num_(n) { normalize(); }  // NOLINT(google-explicit-constructor)
  Dyadic(mpz_class num, std::int64_t exp) : num_(std::move(num)), exp_(exp) { normalize(); }

  /// Accepts "a", "-a", "a/2^k", "a/b" with b a power of two.
  static Dyadic parse(std::string_view text);

  const mpz_class& numerator() const { return num_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return sgn(num_) == 0; }
  /// Valuation; only meaningful for nonzero values.
  std::int64_t valuation() const { return exp_; }
  bool is_integral() const { return is_zero() || exp_ >= 0; }
  /// Integer value; requires is_integral().
  mpz_class to_integer() const;

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  Dyadic shifted(std::int64_t k) const { return Dyadic(num_, exp_ + k); }

  /// "n" for integers, "n/2^k" otherwise.
  std::string to_string() const;

 private:
  void normalize();
  mpz_class num_{0};
  std::int64_t exp_ = 0;
};

/// Dense polynomial with integer coefficients, lowest degree first, no
/// trailing zero coefficients (the zero polynomial has no coefficients).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const mpz_class& c, std::size_t degree);
  static IntPoly constant(const mpz_class& c) { return monomial(c, 0); }
  static IntPoly x() { return monomial(1, 1); }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const mpz_class& lead() const { return coeffs_.back(); }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  mpz_class eval(const mpz_class& x) const;
  IntPoly derivative() const;
  mpz_class content() const;
  /// Divides every coefficient exactly by d.
  IntPoly divexact(const mpz_class& d) const;
  IntPoly shifted(std::size_t k) const;  // multiply by x^k

  IntPoly operator-() const;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const mpz_class& c, const IntPoly& p);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

IntPoly pow(const IntPoly& p, unsigned e);

/// Quotient and remainder of division by a monic polynomial.
struct PolyDivision {
  IntPoly quotient;
  IntPoly remainder;
};
PolyDivision divide_by_monic(const IntPoly& a, const IntPoly& monic_divisor);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Resultant by the fraction-free subresultant polynomial remainder sequence.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f).
mpz_class discriminant(const IntPoly& f);

/// Parses an integer-coefficient expression in one variable: integers, the
/// variable, + - * ^ and parentheses. Multiplication must be explicit.
/// Any name in `variables` is accepted as the indeterminate.
IntPoly parse_poly(std::string_view text,
                   std::initializer_list<std::string_view> variables = {"x"});

}  // namespace selchab
