#pragma once

// The algebra Z_2[theta] = Z_2[x]/(f) for f squarefree mod 2: its residue
// fields, trace maps, and unit square classes.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "selchab/gf2.hpp"
#include "selchab/intpoly.hpp"

namespace selchab {

/// Element of (Z/2^bits)[theta]/(f), coefficients of 1, theta, theta^2, ...
struct AlgebraElement {
  std::vector<std::uint64_t> c;
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// Arithmetic in (Z/2^bits)[x]/(f) for monic f, 1 <= bits <= 64.
class ResidueAlgebra {
 public:
  ResidueAlgebra(const IntPoly& f, unsigned bits);

  std::size_t degree() const { return n_; }
  unsigned bits() const { return bits_; }

  AlgebraElement zero() const { return AlgebraElement{std::vector<std::uint64_t>(n_, 0)}; }
  AlgebraElement from_int(long v) const;
  AlgebraElement theta() const;
  /// Image of p(theta).
  AlgebraElement from_poly(const IntPoly& p) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement scale(const AlgebraElement& a, std::int64_t s) const;
  AlgebraElement pow(const AlgebraElement& a, const mpz_class& e) const;
  /// Inverse of a unit; throws NotAUnit when the reduction mod 2 is not coprime to f mod 2.
  AlgebraElement inverse(const AlgebraElement& a) const;

  Gf2Poly reduce_mod2(const AlgebraElement& a) const;
  AlgebraElement lift(const Gf2Poly& p) const;
  std::string to_string(const AlgebraElement& a) const;

 private:
  std::uint64_t mask(std::uint64_t v) const { return bits_ == 64 ? v : (v & ((std::uint64_t{1} << bits_) - 1)); }
  std::size_t n_;
  unsigned bits_;
  std::vector<std::uint64_t> f_;  // low coefficients f_0..f_{n-1} mod 2^bits
  Gf2Poly fbar_;
};

/// F_2 coordinate vector of a unit square class with respect to the H_2 basis.
using SquareClass = Gf2Vec;

struct Delta2Generator {
  int d = 0;      // exponent in 1 - scale * (-theta)^(-d)
  int scale = 2;  // 2 or 4
  AlgebraElement representative;  // modulo 8
  SquareClass coords;
};

/// Mod-2 data of f = x^(2g+1) + h^2.
struct EtaleData {
  IntPoly f;
  int g = 0;
  Gf2Poly fbar;
  std::vector<Gf2Poly> fbar_factors;
  std::vector<Gf2Vec> trace_table;     // trace_table[k] = Tr(theta_bar^k), k = 0..2g
  std::vector<int> bprime_exponents;   // representatives theta^k of F_2[theta]/ker Tr
  mpz_class odd_exponent;              // lcm(2^deg F_j - 1)
  std::vector<int> I_set;
  std::vector<Delta2Generator> delta2_basis;

  std::size_t m() const { return fbar_factors.size(); }
  std::size_t theta_dim() const { return static_cast<std::size_t>(2 * g + 1); }
  std::size_t dim_h2() const { return theta_dim() + m(); }
  std::vector<int> factor_degrees() const;
  ResidueAlgebra algebra(unsigned bits = 3) const { return ResidueAlgebra(f, bits); }
};

/// Requires f monic of odd degree 2g+1 and squarefree mod 2.
EtaleData build_etale(const IntPoly& f);

/// Trace vector (Tr_{F_j/F_2} a_j)_j of an element of F_2[theta_bar].
Gf2Vec trace_vector(const EtaleData& e, const Gf2Poly& a);
/// Sum of the component traces.
int sum_trace(const EtaleData& e, const Gf2Poly& a);

SquareClass square_class_coords(const EtaleData& e, const AlgebraElement& u);
SquareClass square_class_coords(const EtaleData& e, const IntPoly& u_of_theta);
bool is_square_unit(const EtaleData& e, const AlgebraElement& u);

/// Combination of delta2 generators with the given coefficients.
SquareClass delta2_combination(const EtaleData& e, const Gf2Vec& coeffs);
/// Coordinates of a class in the delta2 basis, or nullopt when it is outside
/// the local image.
std::optional<Gf2Vec> delta2_coordinates(const EtaleData& e, const SquareClass& c);

}  // namespace selchab
