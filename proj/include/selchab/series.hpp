#pragma once

// Truncated power series over Q_2 with per-coefficient precision.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selchab/intpoly.hpp"
#include "selchab/kernels.hpp"
#include "selchab/padic.hpp"

namespace selchab {

/// Lower bound for the valuation of the coefficient of t^n:
///   affine(n) + shift - (log2 n if minus_log2)
/// where affine(n) = (num0 + num1 n) / den, optionally rounded up.
struct ValuationLaw {
  std::int64_t num0 = 0;
  std::int64_t num1 = 0;
  std::int64_t den = 1;
  bool ceil_affine = false;
  bool minus_log2 = false;
  std::int64_t shift = 0;

  long double bound(std::int64_t n) const;
  /// Smallest integer that is >= bound(n); integer valuations obey this too.
  std::int64_t integer_bound(std::int64_t n) const;
  ValuationLaw shifted(std::int64_t k) const {
    ValuationLaw r = *this;
    r.shift += k;
    return r;
  }
  std::string to_string() const;
  friend bool operator==(const ValuationLaw&, const ValuationLaw&) = default;
};

class PadicSeries {
 public:
  PadicSeries() = default;
  explicit PadicSeries(std::vector<PadicNumber> coeffs, std::optional<ValuationLaw> law = {})
      : coeffs_(std::move(coeffs)), law_(std::move(law)) {}

  /// Integer polynomial known modulo t^order_bound, coefficients at relprec bits.
  static PadicSeries from_poly(const IntPoly& p, std::size_t order_bound, std::int64_t relprec);
  static PadicSeries constant(const PadicNumber& c, std::size_t order_bound);

  std::size_t order_bound() const { return coeffs_.size(); }
  const PadicNumber& operator[](std::size_t n) const { return coeffs_[n]; }
  PadicNumber& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<PadicNumber>& coeffs() const { return coeffs_; }

  const std::optional<ValuationLaw>& law() const { return law_; }
  void set_law(std::optional<ValuationLaw> law) { law_ = std::move(law); }
  /// Index of the first stored coefficient not certified to obey the law.
  std::optional<std::size_t> first_violation(const ValuationLaw& law) const;
  bool satisfies_law() const { return !law_ || !first_violation(*law_); }

  PadicSeries truncated(std::size_t order_bound) const;
  /// Smallest absolute precision over the stored coefficients.
  std::int64_t min_absprec() const;

  PadicSeries operator-() const;
  friend PadicSeries operator+(const PadicSeries& a, const PadicSeries& b);
  friend PadicSeries operator-(const PadicSeries& a, const PadicSeries& b) { return a + (-b); }
  friend PadicSeries operator*(const PadicSeries& a, const PadicSeries& b);
  PadicSeries scaled(const PadicNumber& c) const;
  /// Exact multiplication by 2^k.
  PadicSeries mul_pow2(std::int64_t k) const;
  /// Multiplication by t^k; the order bound grows by k.
  PadicSeries shifted(std::size_t k) const;
  /// Substitutes t^k for t.
  PadicSeries spread(std::size_t k) const;

  std::string to_string(std::string_view var = "t") const;

 private:
  std::vector<PadicNumber> coeffs_;
  std::optional<ValuationLaw> law_;
};

/// Product truncated at the given order bound (capped by the inputs').
PadicSeries multiply(const PadicSeries& a, const PadicSeries& b, std::size_t order_bound,
                     ExecPolicy policy = default_policy());

/// 1/s for s with nonzero constant term.
PadicSeries reciprocal(const PadicSeries& s, ExecPolicy policy = default_policy());
/// 1/sqrt(s) and sqrt(s) for s whose constant term is a square; the constant
/// term of the root is chosen as in padic_sqrt.
PadicSeries inv_sqrt_unit(const PadicSeries& s, ExecPolicy policy = default_policy());
PadicSeries sqrt_unit(const PadicSeries& s, ExecPolicy policy = default_policy());
/// f(g(t)) for g with exact zero constant term.
PadicSeries compose(const PadicSeries& f, const PadicSeries& g, ExecPolicy policy = default_policy());
/// p(s(t)) for an integer polynomial p, coefficients taken at relprec bits.
PadicSeries eval_poly(const IntPoly& p, const PadicSeries& s, std::int64_t relprec,
                      ExecPolicy policy = default_policy());
PadicSeries formal_integrate(const PadicSeries& s);
PadicSeries differentiate(const PadicSeries& s);
/// Solves s + phi(s) = rhs for s, where phi(0) = phi'(0) = 0 and rhs(0) = 0.
PadicSeries fixed_point_invert(const PadicSeries& rhs, const IntPoly& phi, std::int64_t relprec,
                               ExecPolicy policy = default_policy());

using SeriesMap = std::function<PadicSeries(const PadicSeries&)>;
/// Newton solver for s + phi(s) = rhs where phi(s) = O(s^2) or phi carries a
/// factor t; dphi is the derivative with respect to s.
PadicSeries fixed_point_invert(const PadicSeries& rhs, const SeriesMap& phi, const SeriesMap& dphi,
                               ExecPolicy policy = default_policy());

/// Value of the truncated polynomial part at t.
PadicNumber evaluate_partial(const PadicSeries& s, const PadicNumber& t);
/// Smallest certified valuation of the tail sum_{n >= order_bound} c_n t^n
/// given v2(t) >= vt, using the series law. Throws PrecisionExhausted when the
/// law does not force convergence.
std::int64_t tail_valuation(const PadicSeries& s, std::int64_t vt);
/// Value at t including a certified bound for the truncated tail.
PadicNumber evaluate(const PadicSeries& s, const PadicNumber& t);

}  // namespace selchab
