// Copyright 2026 the fqgenus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fqgenus/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace fqgenus {

void Poly::trim() {
  while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

Poly::Poly(FqFieldPtr field, std::vector<FqElem> coeffs) : F_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

Poly Poly::one(FqFieldPtr F) {
  auto f = F;
  return Poly(std::move(F), {f->one()});
}

Poly Poly::constant(FqFieldPtr F, FqElem c) {
  return Poly(std::move(F), {c});
}

Poly Poly::variable(FqFieldPtr F) {
  auto f = F;
  return Poly(std::move(F), {f->zero(), f->one()});
}

Poly Poly::from_index(FqFieldPtr F, std::uint64_t index, unsigned width) {
  std::vector<FqElem> c(width);
  std::uint64_t q = F->q();
  for (unsigned i = 0; i < width; ++i) {
    c[i] = FqElem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return Poly(std::move(F), std::move(c));
}

std::uint64_t Poly::to_index(unsigned width) const {
  std::uint64_t q = F_->q();
  std::uint64_t idx = 0;
  for (unsigned i = width; i-- > 0;) idx = idx * q + coeff(static_cast<int>(i)).v;
  return idx;
}

FqElem Poly::sgn() const {
  if (is_zero()) throw value_error("sgn of the zero polynomial");
  return c_.back();
}

Poly Poly::star_twist() const {
  if (is_zero()) throw value_error("star twist of the zero polynomial");
  FqElem m1 = F_->minus_one();
  FqElem t = F_->pow(m1, degree());
  return scaled(t);
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FqElem> c(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(F_ ? F_ : o.F_, std::move(c));
}

Poly Poly::operator-() const {
  std::vector<FqElem> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = F_->neg(c_[i]);
  return Poly(F_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(F_ ? F_ : o.F_);
  std::vector<FqElem> c(c_.size() + o.c_.size() - 1, FqElem{0});
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].v == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = F_->add(c[i + j], F_->mul(c_[i], o.c_[j]));
  }
  return Poly(F_, std::move(c));
}

Poly Poly::scaled(FqElem k) const {
  std::vector<FqElem> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = F_->mul(c_[i], k);
  return Poly(F_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw value_error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(F_), *this};
  FqElem lead_inv = F_->inv(d.sgn());
  std::vector<FqElem> rem = c_;
  std::vector<FqElem> quo(static_cast<size_t>(degree() - d.degree() + 1), FqElem{0});
  for (int i = degree(); i >= d.degree(); --i) {
    FqElem top = rem[static_cast<size_t>(i)];
    if (top.v == 0) continue;
    FqElem f = F_->mul(top, lead_inv);
    quo[static_cast<size_t>(i - d.degree())] = f;
    for (int j = 0; j <= d.degree(); ++j) {
      size_t k = static_cast<size_t>(i - d.degree() + j);
      rem[k] = F_->sub(rem[k], F_->mul(f, d.coeff(j)));
    }
  }
  return {Poly(F_, std::move(quo)), Poly(F_, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) throw value_error("monic of the zero polynomial");
  return scaled(F_->inv(sgn()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(F_);
  std::vector<FqElem> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    c[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i)));
  return Poly(F_, std::move(c));
}

FqElem Poly::eval(FqElem x) const {
  FqElem acc{0};
  for (size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), c_[i]);
  return acc;
}

int Poly::compare(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i).v != b.coeff(i).v) return a.coeff(i).v < b.coeff(i).v ? -1 : 1;
  }
  return 0;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
  auto F = a.field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(F), s1 = Poly::zero(F);
  Poly t0 = Poly::zero(F), t1 = Poly::one(F);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  FqElem inv = F->inv(r0.sgn());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) { return (a * b) % mod; }

Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& mod) {
  check_invariant(e >= 0, "poly_powmod needs a nonnegative exponent");
  Poly r = Poly::one(base.field() ? base.field() : mod.field());
  Poly b = base % mod;
  mpz_class n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = poly_mulmod(r, b, mod);
    n >>= 1;
    if (n > 0) b = poly_mulmod(b, b, mod);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Factorization

Poly FactoredPoly::value() const {
  Poly v = Poly::constant(field, unit);
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) v = v * p;
  return v;
}

mpz_class FactoredPoly::euler_phi() const {
  // Phi(P^a) = (q^d - 1) * q^(d(a-1)), multiplicative over coprime factors;
  // this is the unit count of F_q[T]/P^a.
  mpz_class phi = 1;
  mpz_class q = static_cast<unsigned long>(field->q());
  for (const auto& [p, e] : factors) {
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p.degree()));
    mpz_class local = qd - 1;
    mpz_class filt;
    mpz_pow_ui(filt.get_mpz_t(), qd.get_mpz_t(), static_cast<unsigned long>(e - 1));
    phi *= local * filt;
  }
  return phi;
}

int FactoredPoly::degree() const {
  int d = 0;
  for (const auto& [p, e] : factors) d += p.degree() * e;
  return d;
}

FactoredPoly FactoredPoly::without(const Poly& prime) const {
  FactoredPoly out;
  out.unit = unit;
  out.field = field;
  for (const auto& [p, e] : factors)
    if (!(p == prime)) out.factors.emplace_back(p, e);
  return out;
}

int FactoredPoly::exponent_of(const Poly& prime) const {
  for (const auto& [p, e] : factors)
    if (p == prime) return e;
  return 0;
}

namespace {

std::uint64_t poly_hash(const Poly& f) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& c : f.coeffs()) {
    h ^= c.v;
    h *= 1099511628211ull;
  }
  return h;
}

// p-th root of a polynomial all of whose exponents are multiples of p
// (f' == 0).  Coefficient p-th roots are c^(q/p).
Poly pth_root(const Poly& f) {
  const auto& F = f.field();
  std::uint64_t p = F->p();
  std::vector<FqElem> c(static_cast<size_t>(f.degree() / static_cast<int>(p)) + 1);
  std::int64_t root_exp = static_cast<std::int64_t>(F->q() / p);
  for (size_t i = 0; i < c.size(); ++i) {
    FqElem a = f.coeff(static_cast<int>(i * p));
    c[i] = a.v == 0 ? a : F->pow(a, root_exp);
  }
  return Poly(F, std::move(c));
}

// Squarefree decomposition of a monic f: list of (g_i monic squarefree, i).
void squarefree_decomp(const Poly& f, int mult, std::map<int, Poly>& out) {
  const auto& F = f.field();
  if (f.is_one()) return;
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_decomp(pth_root(f), mult * static_cast<int>(F->p()), out);
    return;
  }
  Poly c = poly_gcd(f, fp);
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(w, c);
    Poly z = w / y;
    if (!z.is_one()) {
      auto it = out.find(i * mult);
      if (it == out.end())
        out.emplace(i * mult, z);
      else
        it->second = it->second * z;
    }
    w = std::move(y);
    c = c / w;
    ++i;
  }
  // The leftover collects the factors of p-divisible multiplicity; it is a
  // p-th power, so the derivative-zero branch above picks up the factor p.
  if (!c.is_one()) squarefree_decomp(c, mult, out);
}

// Distinct-degree factorization of a monic squarefree f.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f0) {
  const auto& F = f0.field();
  std::vector<std::pair<Poly, int>> out;
  Poly f = f0;
  Poly x = Poly::variable(F);
  Poly h = x;
  mpz_class q = static_cast<unsigned long>(F->q());
  int d = 0;
  while (f.degree() > 2 * (d + 1) - 1 && f.degree() > 0) {
    ++d;
    h = poly_powmod(h, q, f);
    Poly g = poly_gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree f whose
// irreducible factors all have degree d.  The random stream is seeded from
// the polynomial so output is reproducible.
void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const auto& F = f.field();
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  mpz_class qd;
  mpz_class q = static_cast<unsigned long>(F->q());
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  Poly g(F);
  while (true) {
    std::uint64_t span = 1;
    for (int i = 0; i < f.degree() && span < (1ull << 40); ++i) span *= F->q();
    std::uint64_t idx = rng() % span;
    Poly r = Poly::from_index(F, idx, static_cast<unsigned>(f.degree()));
    if (r.degree() < 1) continue;
    if (F->p() != 2) {
      mpz_class m = (qd - 1) / 2;
      Poly t = poly_powmod(r, m, f) - Poly::one(F);
      g = poly_gcd(t, f);
    } else {
      // Absolute trace over F_2: r + r^2 + r^4 + ... (s*d terms).
      Poly t(F), cur = r % f;
      unsigned terms = F->s() * static_cast<unsigned>(d);
      for (unsigned i = 0; i < terms; ++i) {
        t = t + cur;
        cur = poly_mulmod(cur, cur, f);
      }
      g = poly_gcd(t, f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) break;
  }
  equal_degree(g, d, rng, out);
  equal_degree(f / g, d, rng, out);
}

}  // namespace

FactoredPoly factorize(const Poly& n) {
  if (n.is_zero()) throw value_error("factorize(0)");
  const auto& F = n.field();
  FactoredPoly out;
  out.field = F;
  out.unit = n.sgn();
  if (n.degree() == 0) return out;
  Poly f = n.monic();

  std::map<int, Poly> sqf;
  squarefree_decomp(f, 1, sqf);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ poly_hash(n));
  for (const auto& [mult, part] : sqf) {
    for (const auto& [g, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(g, d, rng, irr);
      for (const auto& p : irr) out.factors.emplace_back(p, mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return Poly::compare(a.first, b.first) < 0; });
  check_invariant(out.value() == n, "factorize: recomposition mismatch");
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fac = factorize(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

IrreducibleEnum::IrreducibleEnum(FqFieldPtr F, int max_degree)
    : F_(std::move(F)), max_degree_(max_degree) {
  index_end_ = F_->q();  // q^1 monic linear candidates
}

Poly IrreducibleEnum::next() {
  while (degree_ <= max_degree_) {
    while (index_ < index_end_) {
      Poly f = Poly::from_index(F_, index_, static_cast<unsigned>(degree_));
      ++index_;
      // make monic of the right degree
      std::vector<FqElem> c = f.coeffs();
      c.resize(static_cast<size_t>(degree_) + 1, FqElem{0});
      c[static_cast<size_t>(degree_)] = F_->one();
      Poly cand(F_, std::move(c));
      if (degree_ == 1 || is_irreducible(cand)) return cand;
    }
    ++degree_;
    index_ = 0;
    index_end_ = 1;
    for (int i = 0; i < degree_ && index_end_ < (1ull << 40); ++i) index_end_ *= F_->q();
  }
  return Poly(F_);
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw parse_error("unbalanced parentheses: " + text);
  out.push_back(cur);
  return out;
}

std::string strip_ws(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

Poly Poly::parse(const FqFieldPtr& F, const std::string& raw) {
  std::string text = strip_ws(raw);
  if (text.empty()) throw parse_error("empty polynomial literal");
  Poly acc(F);
  for (const std::string& t0 : split_top_level(text)) {
    std::string t = strip_ws(t0);
    if (t.empty()) throw parse_error("empty term in polynomial: " + raw);
    // term: coeff | [coeff '*'] 'T' ['^' k]
    // Find a top-level 'T'.
    size_t tpos = std::string::npos;
    int depth = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (t[i] == 'T' && depth == 0) {
        tpos = i;
        break;
      }
    }
    FqElem coeff = F->one();
    int expo = 0;
    if (tpos == std::string::npos) {
      coeff = F->parse(t);
    } else {
      std::string pre = strip_ws(t.substr(0, tpos));
      if (!pre.empty()) {
        if (pre.back() != '*') throw parse_error("expected '*' before T in term: " + t);
        coeff = F->parse(strip_ws(pre.substr(0, pre.size() - 1)));
      }
      expo = 1;
      std::string post = strip_ws(t.substr(tpos + 1));
      if (!post.empty()) {
        if (post[0] != '^') throw parse_error("bad term: " + t);
        std::string num = strip_ws(post.substr(1));
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) {
              return std::isdigit(c);
            }))
          throw parse_error("bad exponent in term: " + t);
        expo = std::stoi(num);
      }
    }
    std::vector<FqElem> c(static_cast<size_t>(expo) + 1, FqElem{0});
    c[static_cast<size_t>(expo)] = coeff;
    acc = acc + Poly(F, std::move(c));
  }
  return acc;
}

std::string Poly::format() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    FqElem c = coeff(i);
    if (c.v == 0) continue;
    if (!first) os << '+';
    first = false;
    std::string ct = F_->format(c);
    bool needs_parens = ct.find('+') != std::string::npos || ct.find('*') != std::string::npos;
    if (i == 0) {
      os << (needs_parens ? "(" + ct + ")" : ct);
    } else {
      if (c.v != 1) os << (needs_parens ? "(" + ct + ")" : ct) << '*';
      os << 'T';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rational functions

RationalFn RationalFn::make(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw value_error("rational function with zero denominator");
  if (num.is_zero()) return {Poly(num.field() ? num.field() : den.field()), Poly::one(den.field())};
  Poly g = poly_gcd(num, den);
  Poly n = num / g;
  Poly d = den / g;
  FqElem lead = d.sgn();
  const auto& F = d.field();
  if (lead.v != 1) {
    FqElem inv = F->inv(lead);
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  return {std::move(n), std::move(d)};
}

RationalFn RationalFn::from_poly(const Poly& p) { return {p, Poly::one(p.field())}; }

FqElem RationalFn::sign_at_infinity() const {
  if (num.is_zero()) throw value_error("sign of zero");
  return num.field()->mul(num.sgn(), num.field()->inv(den.sgn()));
}

int RationalFn::v_infty() const {
  if (num.is_zero()) throw value_error("valuation of zero at infinity");
  return den.degree() - num.degree();
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  return make(num * o.num, den * o.den);
}

RationalFn RationalFn::inverse() const {
  if (num.is_zero()) throw value_error("inverse of zero");
  return make(den, num);
}

std::string RationalFn::format() const {
  if (den.is_one()) return num.format();
  std::string n = num.format();
  bool np = n.find('+') != std::string::npos;
  std::string d = den.format();
  bool dp = d.find('+') != std::string::npos || d.find('*') != std::string::npos;
  return (np ? "(" + n + ")" : n) + "/" + (dp ? "(" + d + ")" : d);
}

RationalFn RationalFn::parse(const FqFieldPtr& F, const std::string& raw) {
  std::string text = strip_ws(raw);
  int depth = 0;
  size_t slash = std::string::npos;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      slash = i;
      break;
    }
  }
  auto unparen = [](std::string s) {
    s = strip_ws(s);
    if (!s.empty() && s.front() == '(' && s.back() == ')') {
      int d = 0;
      bool wraps = true;
      for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++d;
        if (s[i] == ')') --d;
        if (d == 0) {
          wraps = false;
          break;
        }
      }
      if (wraps) return strip_ws(s.substr(1, s.size() - 2));
    }
    return s;
  };
  if (slash == std::string::npos) return from_poly(Poly::parse(F, unparen(text)));
  Poly n = Poly::parse(F, unparen(text.substr(0, slash)));
  Poly d = Poly::parse(F, unparen(text.substr(slash + 1)));
  return make(n, d);
}

}  // namespace fqgenus
