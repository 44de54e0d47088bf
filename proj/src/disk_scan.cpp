#include "selchab/disk_scan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "selchab/error.hpp"

namespace selchab {

namespace {

using kernels::kInf;

constexpr std::int64_t kPointRelprec = 256;

// Lower bound for the valuation of a coefficient.
std::int64_t vlow(const PadicNumber& c) { return c.valuation(); }

std::vector<Gf2Vec> sorted_distinct(std::vector<Gf2Vec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// min over n of v(c_n) + n k, tail included.
std::int64_t term_minimum(const std::vector<PadicSeries>& F, std::int64_t k, std::size_t from = 1) {
  std::int64_t best = kInf;
  for (const auto& s : F) {
    for (std::size_t n = from; n < s.order_bound(); ++n) {
      const std::int64_t v = vlow(s[n]);
      if (v < kInf) best = std::min(best, v + static_cast<std::int64_t>(n) * k);
    }
    best = std::min(best, tail_valuation(s, k));
  }
  return best;
}

struct Pending {
  mpz_class u;
  std::int64_t j;
};

}  // namespace

std::string to_string(DiskCenter c) { return c == DiskCenter::P0 ? "P0" : "infinity"; }

std::optional<Gf2Vec> try_rho(const std::vector<PadicNumber>& v) {
  std::int64_t V = kInf;
  for (const auto& x : v)
    if (x.is_nonzero()) V = std::min(V, x.valuation());
  if (V >= kInf) return std::nullopt;
  Gf2Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const PadicNumber& x = v[i];
    if (x.is_exact_zero()) continue;
    if (x.absprec() < V + 1) return std::nullopt;
    r[i] = static_cast<std::uint8_t>(x.is_nonzero() && x.valuation() == V);
  }
  return r;
}

Gf2Vec rho(const std::vector<PadicNumber>& v) {
  auto r = try_rho(v);
  if (!r) throw Error(ErrorCode::IndistinguishableFromZero, "minimal valuation is not certified");
  return *r;
}

std::vector<PadicSeries> disk_log_series(const LogLattice& lat, DiskCenter center) {
  const Expansion& e = center == DiskCenter::P0 ? lat.p0 : lat.infinity;
  const auto G = static_cast<std::size_t>(lat.g);
  const std::int64_t umin = lat.U.min_valuation();
  std::vector<PadicSeries> F;
  for (std::size_t k = 0; k < G; ++k) {
    PadicSeries acc(std::vector<PadicNumber>(e.order_bound()));
    for (std::size_t j = 0; j < G; ++j) {
      const Dyadic& d = lat.U.at(j, k);
      if (d.is_zero()) continue;
      acc = acc + e.ell[j].scaled(to_padic(d, e.relprec + 64));
    }
    acc.set_law(e.ell_law.shifted(umin));
    F.push_back(std::move(acc));
  }
  return F;
}

std::vector<PadicNumber> evaluate_log(const std::vector<PadicSeries>& F, const PadicNumber& t) {
  std::vector<PadicNumber> out;
  out.reserve(F.size());
  for (const auto& s : F) out.push_back(evaluate(s, t));
  return out;
}

std::string ScanCell::describe() const {
  std::ostringstream os;
  if (dominant) {
    os << "v2(t) >= " << k << ": leading term dominates";
  } else {
    os << "t in 2^" << k << "(" << u.get_str() << " + 2^" << j << " Z_2)";
  }
  os << " -> " << gf2_to_string(rho) << " at valuation " << value_valuation;
  return os.str();
}

DiskScanResult disk_scan(const LogLattice& lat, DiskCenter center, const ScanOptions& opts) {
  return disk_scan(disk_log_series(lat, center), center, opts);
}

DiskScanResult disk_scan(const std::vector<PadicSeries>& F, DiskCenter center, const ScanOptions& opts) {
  if (F.empty()) throw Error(ErrorCode::InvalidInput, "no series to scan");
  DiskScanResult res;
  res.center = center;
  const std::size_t N = F.front().order_bound();

  // Leading coefficient vector; everything before it must vanish exactly.
  std::optional<Gf2Vec> lead;
  std::int64_t V1 = 0;
  for (std::size_t n = 1; n < N; ++n) {
    std::vector<PadicNumber> c;
    bool all_exact = true;
    for (const auto& s : F) {
      c.push_back(s[n]);
      all_exact = all_exact && s[n].is_exact_zero();
    }
    if (all_exact) continue;
    lead = try_rho(c);
    if (!lead)
      throw Error(ErrorCode::InsufficientPrecision,
                  "leading coefficient t^" + std::to_string(n) + " is not certified nonzero");
    res.n1 = n;
    V1 = kInf;
    for (const auto& x : c)
      if (x.is_nonzero()) V1 = std::min(V1, x.valuation());
    break;
  }
  if (!lead) throw Error(ErrorCode::InsufficientPrecision, "log' vanishes to the computed order");

  // k0: the leading term beats every other term by one bit on v2(t) = k.
  const auto n1 = static_cast<std::int64_t>(res.n1);
  for (std::int64_t k = 1;; ++k) {
    if (term_minimum(F, k, res.n1 + 1) >= V1 + n1 * k + 1) {
      res.k0 = k;
      break;
    }
    if (k > 100000) throw Error(ErrorCode::ScanBudgetExceeded, "no dominance threshold found");
  }

  std::vector<Gf2Vec> found;
  for (std::int64_t k = 1; k < res.k0; ++k) {
    const std::int64_t spread = term_minimum(F, k);
    std::vector<Pending> frontier{{1, 1}};
    while (!frontier.empty()) {
      res.classes_evaluated += frontier.size();
      if (res.classes_evaluated > opts.budget)
        throw Error(ErrorCode::ScanBudgetExceeded,
                    "more than " + std::to_string(opts.budget) + " classes needed on v2(t) = " + std::to_string(k));
      const auto m = static_cast<std::int64_t>(frontier.size());
      std::vector<std::optional<ScanCell>> pinned(frontier.size());
      std::vector<std::string> failures(frontier.size());
      const auto body = [&](std::int64_t ii) {
        const auto i = static_cast<std::size_t>(ii);
        try {
          const mpz_class t0 = frontier[i].u << static_cast<mp_bitcnt_t>(k);
          const auto value = evaluate_log(F, PadicNumber::from_integer(t0, kPointRelprec));
          const auto r = try_rho(value);
          if (!r) return;
          std::int64_t V = kInf;
          for (const auto& x : value)
            if (x.is_nonzero()) V = std::min(V, x.valuation());
          if (frontier[i].j + spread < V + 1) return;
          pinned[i] = ScanCell{k, frontier[i].u, frontier[i].j, false, V, *r};
        } catch (const std::exception& e) {
          failures[i] = e.what();
        }
      };
      if (opts.policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < m; ++i) body(i);
      } else {
        for (std::int64_t i = 0; i < m; ++i) body(i);
      }
      std::vector<Pending> next;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        if (!failures[i].empty()) throw Error(ErrorCode::InsufficientPrecision, failures[i]);
        if (pinned[i]) {
          found.push_back(pinned[i]->rho);
          res.certificate.push_back(std::move(*pinned[i]));
        } else {
          const std::int64_t j = frontier[i].j;
          next.push_back({frontier[i].u, j + 1});
          next.push_back({frontier[i].u + (mpz_class(1) << static_cast<mp_bitcnt_t>(j)), j + 1});
        }
      }
      std::sort(next.begin(), next.end(), [](const Pending& a, const Pending& b) { return a.u < b.u; });
      frontier = std::move(next);
    }
  }
  ScanCell dom;
  dom.k = res.k0;
  dom.dominant = true;
  dom.value_valuation = V1 + n1 * res.k0;
  dom.rho = *lead;
  res.certificate.push_back(dom);
  found.push_back(*lead);
  res.classes = sorted_distinct(std::move(found));
  res.covers_disk = certificate_covers_disk(res.certificate);
  return res;
}

bool certificate_covers_disk(const std::vector<ScanCell>& cells) {
  std::int64_t k0 = 0;
  std::size_t dominant = 0;
  for (const auto& c : cells)
    if (c.dominant) {
      k0 = c.k;
      ++dominant;
    }
  if (dominant != 1 || k0 < 1) return false;
  std::map<std::int64_t, std::vector<const ScanCell*>> shells;
  for (const auto& c : cells) {
    if (c.dominant) continue;
    if (c.k < 1 || c.k >= k0 || c.j < 1 || mpz_even_p(c.u.get_mpz_t())) return false;
    shells[c.k].push_back(&c);
  }
  for (std::int64_t k = 1; k < k0; ++k) {
    auto it = shells.find(k);
    if (it == shells.end()) return false;
    const auto& v = it->second;
    std::int64_t jmax = 1;
    for (const auto* c : v) jmax = std::max(jmax, c->j);
    // Each class u + 2^j Z_2 (u odd) covers 2^(jmax - j) of the 2^(jmax-1) odd residues mod 2^jmax.
    mpz_class measure = 0;
    for (const auto* c : v) measure += mpz_class(1) << static_cast<mp_bitcnt_t>(jmax - c->j);
    if (measure != (mpz_class(1) << static_cast<mp_bitcnt_t>(jmax - 1))) return false;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        const std::int64_t j = std::min(v[a]->j, v[b]->j);
        mpz_class diff = v[a]->u - v[b]->u;
        if (mpz_divisible_2exp_p(diff.get_mpz_t(), static_cast<mp_bitcnt_t>(j))) return false;
      }
  }
  return true;
}

std::vector<Gf2Vec> brute_force_classes_serial(const std::vector<PadicSeries>& F, unsigned bits) {
  std::vector<Gf2Vec> out;
  const unsigned long count = 1UL << bits;
  for (unsigned long u = 1; u < count; ++u) {
    const mpz_class t = mpz_class(u) * 2;
    out.push_back(rho(evaluate_log(F, PadicNumber::from_integer(t, kPointRelprec))));
  }
  return sorted_distinct(std::move(out));
}

std::vector<Gf2Vec> brute_force_classes_parallel(const std::vector<PadicSeries>& F, unsigned bits) {
  const auto count = static_cast<std::int64_t>(1UL << bits);
  std::vector<Gf2Vec> out(static_cast<std::size_t>(count));
  std::vector<std::string> failures(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t u = 1; u < count; ++u) {
    try {
      const mpz_class t = mpz_class(static_cast<long>(u)) * 2;
      out[static_cast<std::size_t>(u)] = rho(evaluate_log(F, PadicNumber::from_integer(t, kPointRelprec)));
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(u)] = e.what();
    }
  }
  for (std::size_t u = 1; u < failures.size(); ++u)
    if (!failures[u].empty()) throw Error(ErrorCode::IndistinguishableFromZero, failures[u]);
  out.erase(out.begin());
  return sorted_distinct(std::move(out));
}

std::vector<Gf2Vec> brute_force_classes(const std::vector<PadicSeries>& F, unsigned bits, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel ? brute_force_classes_parallel(F, bits)
                                        : brute_force_classes_serial(F, bits);
}

}  // namespace selchab
