#include "selchab/dynamics.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "json.hpp"
#include "selchab/error.hpp"
#include "selchab/report_io.hpp"

namespace selchab {

namespace {

void check_index(int n, int hi) {
  if (n < 1 || n > hi)
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(n) + " outside 1.." + std::to_string(hi));
}

// A_1..A_12 are reused by every B_n, so keep them.
const IntPoly& A_cached(int n) {
  static std::mutex mu;
  static std::array<IntPoly, kMaxIterIndex + 1> cache;
  static int built = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (built == 0) {
    cache[1] = IntPoly::x();
    built = 1;
  }
  while (built < n) {
    cache[built + 1] = cache[built] * cache[built] + IntPoly::x();
    ++built;
  }
  return cache[n];
}

IntPoly B_of(int n) {
  IntPoly num{1};
  std::vector<int> den;
  for (int d : divisors(n)) {
    const int mu = moebius(n / d);
    if (mu == 1) num = num * A_cached(d);
    if (mu == -1) den.push_back(d);
  }
  for (int d : den) {
    auto q = divide_by_monic(num, A_cached(d));
    if (!q.remainder.is_zero())
      throw Error(ErrorCode::InternalInconsistency, "B_" + std::to_string(n) + " division by A_" +
                                                        std::to_string(d) + " left a remainder");
    num = std::move(q.quotient);
  }
  return num;
}

int rank(ChainStatus s) { return static_cast<int>(s); }

ChainStatus worse(ChainStatus a, ChainStatus b) { return rank(a) >= rank(b) ? a : b; }

ChainStatus from_provenance(FactProvenance p) {
  return p == FactProvenance::GrhConditional ? ChainStatus::GRH : ChainStatus::Unconditional;
}

// A usable fact leaves only c = 0 and c = -1, where x^2 + c is reducible.
const SquareFact* find_fact(const std::vector<SquareFact>& facts, int index, int sign) {
  const SquareFact* best = nullptr;
  for (const auto& f : facts) {
    if (f.index != index || f.sign != sign) continue;
    const bool harmless =
        std::all_of(f.exceptional.begin(), f.exceptional.end(), [](long c) { return c == 0 || c == -1; });
    if (!harmless) continue;
    if (!best || rank(from_provenance(f.provenance)) < rank(from_provenance(best->provenance))) best = &f;
  }
  return best;
}

std::string fact_label(int sign, int index) {
  return std::string(sign < 0 ? "-" : "") + "A_" + std::to_string(index);
}

}  // namespace

std::string to_string(IterKind k) {
  switch (k) {
    case IterKind::A: return "A";
    case IterKind::a: return "a";
    case IterKind::B: return "B";
  }
  return "?";
}

IterKind parse_iter_kind(const std::string& s) {
  if (s == "A") return IterKind::A;
  if (s == "a") return IterKind::a;
  if (s == "B") return IterKind::B;
  throw Error(ErrorCode::InvalidInput, "polynomial kind must be A, a or B, got '" + s + "'");
}

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<int> odd_prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 3; p <= n; p += 2) {
    if (n % p) continue;
    bool prime = true;
    for (int q = 3; q * q <= p; q += 2) prime = prime && p % q;
    if (prime) out.push_back(p);
  }
  return out;
}

IterPoly iter_poly(IterKind kind, int n) {
  check_index(n, kMaxIterIndex);
  IterPoly out{n, kind, {}};
  switch (kind) {
    case IterKind::A:
      out.poly = A_cached(n);
      break;
    case IterKind::a: {
      // A_n(0) = 0, so reversing at degree 2^(n-1) drops the constant term.
      const auto& c = A_cached(n).coeffs();
      std::vector<mpz_class> r(c.rbegin(), c.rend() - 1);
      out.poly = IntPoly(std::move(r));
      break;
    }
    case IterKind::B:
      out.poly = B_of(n);
      break;
  }
  return out;
}

int rigid_divisibility_check(int m, int n) {
  check_index(n, kMaxResultantIndex);
  if (m < 1 || m >= n) throw Error(ErrorCode::IndexOutOfRange, "need 1 <= m < n");
  const mpz_class r = resultant(B_of(m), B_of(n));
  if (r != 1 && r != -1)
    throw Error(ErrorCode::ResultantNotUnit,
                "Res(B_" + std::to_string(m) + ", B_" + std::to_string(n) + ") = " + r.get_str());
  return static_cast<int>(r.get_si());
}

ThreeAdicCertificate three_adic_square_certificate(const IntPoly& B) {
  if (B.degree() < 0 || B.degree() % 2) throw Error(ErrorCode::OddDegree, "degree " + std::to_string(B.degree()));
  if (!B.is_monic()) throw Error(ErrorCode::NotMonic, "leading coefficient " + B.lead().get_str());
  ThreeAdicCertificate cert;
  cert.holds = true;
  for (int x = 0; x < 3; ++x) {
    mpz_class v = B.eval(x) % 3;
    if (v < 0) v += 3;
    cert.residues[x] = static_cast<int>(v.get_si());
    cert.holds = cert.holds && cert.residues[x] == 1;
  }
  return cert;
}

IntPoly cofactor_B(int m, int n) {
  check_index(n, kMaxIterIndex);
  if (m < 1 || n % m) throw Error(ErrorCode::InvalidInput, "m must divide n");
  IntPoly out{1};
  for (int d : divisors(n))
    if (m % d) out = out * B_of(d);
  return out;
}

std::string ReductionCase::target() const {
  return std::string(signs.size() > 1 ? "+-" : "") + "A_" + std::to_string(index);
}

ReductionPlan reduce_square_question(int n) {
  if (n < 2) throw Error(ErrorCode::IndexOutOfRange, "reduction needs n >= 2");
  ReductionPlan plan;
  plan.n = n;
  const std::string An = "A_" + std::to_string(n) + "(c)";
  if (n % 2) {
    for (int p : odd_prime_divisors(n))
      if (p < n) plan.cases.push_back({p, {1}, "n odd, p an odd prime divisor: B = A_n/A_p is a 3-adic square"});
    plan.conclusion = plan.cases.empty() ? An + " is prime-indexed; no reduction"
                                         : "if " + An + " is a square then so is each A_p(c) listed";
  } else if (n % 4 == 0) {
    if (n > 4) plan.cases.push_back({4, {1}, "4 | n: B = A_n/A_4 is a 3-adic square"});
    plan.conclusion = "c in {0, -1} whenever " + An + " is a square (A_4(c) is a square only there)";
  } else {
    for (int p : odd_prime_divisors(n / 2))
      plan.cases.push_back({p, {1, -1}, "n = 2m, m odd: resultant +-1 forces A_p(c) or -A_p(c) to be a square"});
    if (n > 2) plan.cases.push_back({2, {1}, "n even: B = A_n/A_2 is a 3-adic square"});
    plan.conclusion = plan.cases.empty() ? An + " = c(c+1); no reduction"
                                         : "if " + An + " is a square then so are the listed cases";
  }
  return plan;
}

std::string to_string(FactProvenance p) {
  switch (p) {
    case FactProvenance::ProvedHere: return "proved-here";
    case FactProvenance::ExternalReference: return "external-reference";
    case FactProvenance::GrhConditional: return "GRH-conditional";
  }
  return "?";
}

FactProvenance parse_fact_provenance(const std::string& s) {
  for (auto p : {FactProvenance::ProvedHere, FactProvenance::ExternalReference, FactProvenance::GrhConditional})
    if (to_string(p) == s) return p;
  throw Error(ErrorCode::InvalidInput, "unknown fact provenance '" + s + "'");
}

std::vector<SquareFact> facts_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<SquareFact> out;
    for (const auto& e : j.at("facts")) {
      SquareFact f;
      f.index = e.at("index").get<int>();
      f.sign = e.value("sign", 1);
      if (f.sign != 1 && f.sign != -1) throw Error(ErrorCode::InvalidInput, "fact sign must be +1 or -1");
      f.exceptional = e.at("exceptional_c").get<std::vector<long>>();
      f.provenance = parse_fact_provenance(e.at("provenance").get<std::string>());
      f.statement = e.value("statement", std::string());
      out.push_back(std::move(f));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("facts: ") + e.what());
  }
}

std::vector<SquareFact> load_facts(const std::string& path) { return facts_from_json(read_text_file(path)); }

std::string to_string(ChainStatus s) {
  switch (s) {
    case ChainStatus::Unconditional: return "Unconditional";
    case ChainStatus::GRH: return "GRH";
    case ChainStatus::Unknown: return "Unknown";
  }
  return "?";
}

ChainResult irreducibility_chain(int n, const std::vector<SquareFact>& facts) {
  ChainResult res;
  res.n = n;
  res.status = ChainStatus::Unconditional;
  for (int k = 3; k <= n; ++k) {
    ChainLink link{k, ChainStatus::Unknown, "no usable fact"};
    const auto consider = [&](ChainStatus s, const std::string& route) {
      if (rank(s) < rank(link.status)) link = {k, s, route};
    };
    if (const auto* f = find_fact(facts, k, 1)) consider(from_provenance(f->provenance), fact_label(1, k) + " directly");
    for (const auto& c : reduce_square_question(k).cases) {
      if (c.index == 2) continue;  // c(c+1) being a square rules nothing out
      ChainStatus s = ChainStatus::Unconditional;
      std::string route = "via";
      for (int sign : c.signs) {
        const auto* f = find_fact(facts, c.index, sign);
        s = worse(s, f ? from_provenance(f->provenance) : ChainStatus::Unknown);
        route += " " + fact_label(sign, c.index);
      }
      consider(s, route);
    }
    res.links.push_back(link);
    res.status = worse(res.status, link.status);
  }
  return res;
}

}  // namespace selchab
