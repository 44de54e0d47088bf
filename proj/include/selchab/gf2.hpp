#pragma once

// Linear algebra and polynomial arithmetic over F_2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selchab/intpoly.hpp"

namespace selchab {

/// Dense F_2 vector, one byte per entry (0 or 1).
using Gf2Vec = std::vector<std::uint8_t>;

Gf2Vec gf2_add(const Gf2Vec& a, const Gf2Vec& b);
bool gf2_is_zero(const Gf2Vec& v);
std::string gf2_to_string(const Gf2Vec& v);  // "(1,0,1)"

/// Incremental row echelon basis; supports rank, membership and expressing a
/// vector in terms of the inserted generators.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  /// Returns false when v was already in the span.
  bool insert(const Gf2Vec& v);
  bool contains(const Gf2Vec& v) const { return express(v).has_value(); }
  /// Coefficients c (one per successful insert, in insertion order) with
  /// sum c_i g_i = v, or nullopt when v is outside the span.
  std::optional<Gf2Vec> express(const Gf2Vec& v) const;
  /// The generators that were accepted by insert, in order.
  const std::vector<Gf2Vec>& generators() const { return gens_; }

 private:
  std::size_t dim_;
  std::vector<Gf2Vec> gens_;
  std::vector<Gf2Vec> rows_;      // reduced rows
  std::vector<Gf2Vec> combos_;    // which generators make up each row
  std::vector<std::size_t> piv_;  // pivot column of each row
};

std::size_t gf2_rank(const std::vector<Gf2Vec>& vectors, std::size_t dim);

/// Polynomial over F_2, bit i of the word array is the coefficient of x^i.
class Gf2Poly {
 public:
  Gf2Poly() = default;
  static Gf2Poly from_bits(std::uint64_t bits);
  static Gf2Poly monomial(std::size_t degree);
  static Gf2Poly from_intpoly(const IntPoly& p);

  int degree() const;
  bool is_zero() const { return degree() < 0; }
  bool is_one() const { return degree() == 0; }
  bool coeff(std::size_t i) const;
  void set_coeff(std::size_t i, bool value);

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b);
  friend bool operator<(const Gf2Poly& a, const Gf2Poly& b);  // degree, then bits from the top

  Gf2Poly derivative() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint64_t> w_;
};

struct Gf2DivMod {
  Gf2Poly quotient;
  Gf2Poly remainder;
};
Gf2DivMod divmod(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly operator%(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
/// Returns (g, s) with s*a = g mod m and g = gcd(a, m).
std::pair<Gf2Poly, Gf2Poly> inverse_mod(const Gf2Poly& a, const Gf2Poly& m);
Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m);
Gf2Poly powmod(const Gf2Poly& a, const mpz_class& e, const Gf2Poly& m);
bool is_squarefree(const Gf2Poly& f);

/// Irreducible factors of a squarefree polynomial, sorted by degree and then
/// by coefficients. Distinct-degree splitting followed by equal-degree
/// splitting with trace maps; the random choices use a fixed seed.
std::vector<Gf2Poly> factor_squarefree(const Gf2Poly& f, std::uint64_t seed = 0x5e1c4ab);

}  // namespace selchab
