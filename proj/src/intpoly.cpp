#include "selchab/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "selchab/error.hpp"

namespace selchab {

std::int64_t v2(const mpz_class& n) {
  return static_cast<std::int64_t>(mpz_scan1(n.get_mpz_t(), 0));
}

// ---------------------------------------------------------------- Dyadic

void Dyadic::normalize() {
  if (sgn(num_) == 0) {
    exp_ = 0;
    return;
  }
  const auto s = v2(num_);
  if (s > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    exp_ += s;
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto e = std::min(a.exp_, b.exp_);
  mpz_class x = a.num_, y = b.num_;
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - e));
  mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - e));
  return Dyadic(x + y, e);
}

mpz_class Dyadic::to_integer() const {
  if (!is_integral()) throw Error(ErrorCode::InvalidInput, "dyadic value is not an integer");
  mpz_class r = num_;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
  return r;
}

std::string Dyadic::to_string() const {
  if (is_integral()) return to_integer().get_str();
  return num_.get_str() + "/2^" + std::to_string(-exp_);
}

Dyadic Dyadic::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Dyadic(mpz_class(s), 0);
    mpz_class num(s.substr(0, slash));
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) return Dyadic(num, -std::stoll(den.substr(2)));
    mpz_class d(den);
    if (d <= 0) throw Error(ErrorCode::InvalidInput, "bad dyadic denominator '" + den + "'");
    const auto k = v2(d);
    if (d != (mpz_class(1) << static_cast<mp_bitcnt_t>(k)))
      throw Error(ErrorCode::InvalidInput, "denominator is not a power of two: " + den);
    return Dyadic(num, -k);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidInput, "cannot parse dyadic '" + std::string(text) + "'");
  }
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly IntPoly::divexact(const mpz_class& d) const {
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<mpz_class> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
  return IntPoly(kernels::convolve(a.coeffs_, b.coeffs_, n, default_policy()));
}

IntPoly operator*(const mpz_class& c, const IntPoly& p) {
  std::vector<mpz_class> v(p.coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * p.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly result{1};
  IntPoly base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string IntPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << a.get_str();
      continue;
    }
    if (a != 1) out << a.get_str() << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

PolyDivision divide_by_monic(const IntPoly& a, const IntPoly& monic_divisor) {
  if (!monic_divisor.is_monic()) throw Error(ErrorCode::NotMonic, "divisor must be monic");
  const int db = monic_divisor.degree();
  std::vector<mpz_class> r = a.coeffs();
  if (a.degree() < db) return {IntPoly{}, a};
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  const auto& b = monic_divisor.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    const mpz_class c = r[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - db)] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j)
      mpz_submul(r[static_cast<std::size_t>(i - db + j)].get_mpz_t(), c.get_mpz_t(),
                 b[static_cast<std::size_t>(j)].get_mpz_t());
  }
  r.resize(static_cast<std::size_t>(db));
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "pseudo-division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<mpz_class> r = a.coeffs();
  const auto& bc = b.coeffs();
  const mpz_class& lb = b.lead();
  // Each round multiplies the running remainder by lc(b) and cancels the
  // current leading term; rounds where that term is already zero still scale.
  for (int i = a.degree(); i >= db; --i) {
    const mpz_class c = r[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) r[static_cast<std::size_t>(k)] *= lb;
    r[static_cast<std::size_t>(i)] = 0;
    if (sgn(c) != 0) {
      for (int j = 0; j < db; ++j)
        mpz_submul(r[static_cast<std::size_t>(i - db + j)].get_mpz_t(), c.get_mpz_t(),
                   bc[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return IntPoly(std::move(r));
}

namespace {
mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}
mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
}  // namespace

mpz_class resultant(const IntPoly& a_in, const IntPoly& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  IntPoly a = a_in, b = b_in;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -1;
  }
  const mpz_class ca = a.content(), cb = b.content();
  a = a.divexact(ca);
  b = b.divexact(cb);
  const mpz_class t = mpz_pow(ca, static_cast<unsigned long>(b.degree())) *
                      mpz_pow(cb, static_cast<unsigned long>(a.degree()));
  mpz_class g = 1, h = 1;
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) return 0;
    a = std::move(b);
    b = r.divexact(g * mpz_pow(h, static_cast<unsigned long>(delta)));
    g = a.lead();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_div(mpz_pow(g, static_cast<unsigned long>(delta)),
                    mpz_pow(h, static_cast<unsigned long>(delta - 1)));
    }
  }
  // b is a nonzero constant here.
  const int da = a.degree();
  if (da == 0) return s * t;  // both constants: only possible for constant inputs
  mpz_class hf;
  if (da == 1) {
    hf = b.lead();
  } else {
    hf = exact_div(mpz_pow(b.lead(), static_cast<unsigned long>(da)),
                   mpz_pow(h, static_cast<unsigned long>(da - 1)));
  }
  return s * t * hf;
}

mpz_class discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw Error(ErrorCode::InvalidInput, "discriminant of a constant");
  mpz_class r = resultant(f, f.derivative());
  r = exact_div(r, f.lead());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::initializer_list<std::string_view> vars)
      : text_(text), vars_(vars) {}

  IntPoly parse() {
    IntPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::InvalidInput,
                "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expr() {
    IntPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  IntPoly term() {
    IntPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    skip_ws();
    if (pos_ < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
      fail("implicit multiplication is not allowed");
    return acc;
  }
  IntPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    IntPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 100000) fail("exponent too large");
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }
  IntPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      IntPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return IntPoly::constant(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      for (auto v : vars_)
        if (v == name) return IntPoly::x();
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::vector<std::string_view> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text, std::initializer_list<std::string_view> variables) {
  return PolyParser(text, variables).parse();
}

}  // namespace selchab
