#pragma once

// Matrices over Q_2 (with precision) and exact dyadic matrices; Z_2-lattice
// echelonization by column operations.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selchab/gf2.hpp"
#include "selchab/intpoly.hpp"
#include "selchab/padic.hpp"

namespace selchab {

class DyadicMatrix {
 public:
  DyadicMatrix() = default;
  DyadicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static DyadicMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Dyadic& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Dyadic& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b);
  friend bool operator==(const DyadicMatrix& a, const DyadicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  bool is_integral() const;
  /// Smallest valuation among nonzero entries (0 for the zero matrix).
  std::int64_t min_valuation() const;

  /// Exact determinant as a rational.
  mpq_class determinant() const;
  /// Exact inverse as rationals; nullopt when singular.
  std::optional<std::vector<std::vector<mpq_class>>> inverse_rational() const;
  /// Inverse, when all its entries are dyadic.
  std::optional<DyadicMatrix> inverse() const;

  std::vector<std::vector<std::string>> to_strings() const;
  static DyadicMatrix from_strings(const std::vector<std::vector<std::string>>& rows);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Dyadic> a_;
};

class Z2Matrix {
 public:
  Z2Matrix() = default;
  Z2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  PadicNumber& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const PadicNumber& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  /// Exact integer matrix with entries at the given relative precision.
  static Z2Matrix from_integers(const std::vector<std::vector<long>>& rows,
                                std::int64_t relprec = PadicNumber::kDefaultRelprec);

  std::int64_t min_absprec() const;
  std::int64_t max_relprec() const;
  /// Lowers every entry to at most the given absolute precision.
  Z2Matrix truncated(std::int64_t absprec) const;

  std::vector<std::vector<std::string>> to_strings() const;
  static Z2Matrix from_strings(const std::vector<std::vector<std::string>>& rows);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<PadicNumber> a_;
};

/// Exact dyadic value as a 2-adic number carrying at least relprec bits.
PadicNumber to_padic(const Dyadic& d, std::int64_t relprec);

Z2Matrix operator*(const Z2Matrix& a, const DyadicMatrix& b);

struct EchelonResult {
  DyadicMatrix U;
  DyadicMatrix U_inv;
  /// L * U restricted to the pivot rows: lower triangular with unit diagonal.
  Z2Matrix basis;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::int64_t> pivot_valuations;
};

/// Column-operation echelonization of a matrix whose rows span a full
/// Z_2-lattice. Pivots have minimal valuation; ties go to the lowest column,
/// then the lowest row.
EchelonResult echelonize_over_Z2(const Z2Matrix& L);

struct LatticeCertificate {
  bool integral = false;     // every entry of L*U certified in Z_2
  std::size_t f2_rank = 0;   // rank of (L*U mod 2)
  bool ok = false;           // integral and f2_rank == cols
  std::string detail;
};

/// Checks that the rows of L*U generate Z_2^g.
LatticeCertificate certify_lattice(const Z2Matrix& L, const DyadicMatrix& U);

/// Rows of L*U reduced mod 2 (requires an integral certificate).
std::vector<Gf2Vec> reduce_rows_mod2(const Z2Matrix& M);

/// Z_2^g U1^-1 == Z_2^g U2^-1, i.e. U1^-1 U2 lies in GL_g(Z_2).
bool same_lattice(const DyadicMatrix& U1, const DyadicMatrix& U2);

}  // namespace selchab
