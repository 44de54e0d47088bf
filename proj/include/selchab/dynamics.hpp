#pragma once

// Iterates of x^2 + c at the critical point: A_n, the reversed a_n, and the
// primitive parts B_n; plus the reduction of "is A_n(c) a square" to smaller
// indices and the irreducibility chain built on it.

#include <cstdint>
#include <string>
#include <vector>

#include "selchab/intpoly.hpp"

namespace selchab {

enum class IterKind { A, a, B };
std::string to_string(IterKind k);
IterKind parse_iter_kind(const std::string& s);

struct IterPoly {
  int n = 1;
  IterKind kind = IterKind::A;
  IntPoly poly;
};

inline constexpr int kMaxIterIndex = 12;
inline constexpr int kMaxResultantIndex = 8;

/// 1 <= n <= 12, else IndexOutOfRange. B_n is obtained by exact division and
/// throws InternalInconsistency on a nonzero remainder.
IterPoly iter_poly(IterKind kind, int n);

int moebius(int n);
std::vector<int> divisors(int n);
std::vector<int> odd_prime_divisors(int n);

/// Res(B_m, B_n) for 1 <= m < n <= 8. Throws ResultantNotUnit unless it is +-1.
int rigid_divisibility_check(int m, int n);

struct ThreeAdicCertificate {
  bool holds = false;
  int residues[3] = {0, 0, 0};  // B(0), B(1), B(2) mod 3
};
/// B monic of even degree (OddDegree, NotMonic otherwise). Holds when B takes
/// the value 1 mod 3 on all of F_3, so B(c) is a nonzero 3-adic square for
/// every rational c.
ThreeAdicCertificate three_adic_square_certificate(const IntPoly& B);

/// Product of B_d over d | n with d not dividing m.
IntPoly cofactor_B(int m, int n);

struct ReductionCase {
  int index = 0;                   // p, 4 or 2
  std::vector<int> signs;          // {+1} or {+1, -1}
  std::string rationale;
  std::string target() const;      // "A_5", "+-A_5"
};

struct ReductionPlan {
  int n = 0;
  std::vector<ReductionCase> cases;
  std::string conclusion;
};

/// n >= 2. Only indices strictly smaller than n appear; a prime n (and n = 2)
/// gets an empty plan.
ReductionPlan reduce_square_question(int n);

enum class FactProvenance { ProvedHere, ExternalReference, GrhConditional };
std::string to_string(FactProvenance p);
FactProvenance parse_fact_provenance(const std::string& s);

/// "s A_n(c) is a square only for c in exceptional".
struct SquareFact {
  int index = 0;
  int sign = 1;
  std::vector<long> exceptional;
  FactProvenance provenance = FactProvenance::ProvedHere;
  std::string statement;
};

std::vector<SquareFact> facts_from_json(const std::string& text);
std::vector<SquareFact> load_facts(const std::string& path);

enum class ChainStatus { Unconditional, GRH, Unknown };
std::string to_string(ChainStatus s);

struct ChainLink {
  int n = 0;
  ChainStatus status = ChainStatus::Unknown;
  std::string route;
};

struct ChainResult {
  int n = 0;
  ChainStatus status = ChainStatus::Unknown;
  std::vector<ChainLink> links;  // n = 3..target
};

/// Status of "f_c^{o2} irreducible implies f_c^{on} irreducible". Link k holds
/// when A_k(c) cannot be a square for c outside {0, -1}.
ChainResult irreducibility_chain(int n, const std::vector<SquareFact>& facts);

}  // namespace selchab
