#pragma once

// Independent reference computations for the tests. Everything here works
// with exact rationals or brute force and shares no code with the library
// beyond the plain data types.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "selchab/intpoly.hpp"
#include "selchab/padic.hpp"

namespace oracle {

using Q = std::vector<mpq_class>;

Q from_poly(const selchab::IntPoly& p, std::size_t n);
Q mul(const Q& a, const Q& b, std::size_t n);
Q inv(const Q& a, std::size_t n);
/// Square root with prescribed constant term r0 (r0^2 == a[0]).
Q sqrt(const Q& a, const mpq_class& r0, std::size_t n);
Q integrate(const Q& a);  // result[k] = a[k-1] / k
Q derivative(const Q& a);
Q power(const Q& a, unsigned e, std::size_t n);

/// 2-adic valuation of a nonzero rational.
long v2(const mpq_class& q);
/// True when p equals q to the absolute precision p claims.
bool agrees(const selchab::PadicNumber& p, const mpq_class& q);
mpq_class to_mpq(const selchab::Dyadic& d);

/// Determinant of an integer matrix by Bareiss elimination.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m);
/// Resultant as the determinant of the Sylvester matrix.
mpz_class sylvester_resultant(const selchab::IntPoly& a, const selchab::IntPoly& b);

/// All squares of units of (Z/8)[x]/(f), f monic; elements are coefficient
/// vectors with entries in 0..7.
std::set<std::vector<int>> unit_squares_mod8(const selchab::IntPoly& f);
std::vector<int> mulmod8(const std::vector<int>& a, const std::vector<int>& b, const selchab::IntPoly& f);
bool is_unit_mod2(const std::vector<int>& a, const selchab::IntPoly& f);

/// Random h of degree <= g with h(0) odd, h(1) even and f squarefree mod 2.
selchab::IntPoly random_h(std::mt19937_64& rng, int g, int bound);

}  // namespace oracle
