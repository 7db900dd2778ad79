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

#include "fqgenus/fq.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace fqgenus {

namespace {

constexpr std::uint64_t kMaxQ = 1u << 20;
constexpr std::uint64_t kTableLimit = 1024;

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Minimal F_p[x] arithmetic on coefficient vectors, used only to set up
// extension fields (modulus validation and the digit-level multiply).
using PVec = std::vector<std::uint32_t>;

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmul(const PVec& a, const PVec& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PVec c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  ptrim(c);
  return c;
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  // p is prime and a != 0 mod p
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
  while (newr != 0) {
    std::int64_t qq = r / newr;
    std::swap(t -= qq * newt, newt);
    std::swap(r -= qq * newr, newr);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

PVec pmod(PVec a, const PVec& m, std::uint64_t p) {
  ptrim(a);
  const size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = c * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

PVec ppowmod(PVec base, std::uint64_t e, const PVec& m, std::uint64_t p) {
  PVec r{1};
  base = pmod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    e >>= 1;
    if (e) base = pmod(pmul(base, base, p), m, p);
  }
  return r;
}

PVec pgcd(PVec a, PVec b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PVec r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Irreducibility of a monic polynomial over F_p: x^(p^d) == x mod f and
// gcd(x^(p^(d/l)) - x, f) == 1 for every prime l | d.
bool irreducible_over_fp(const PVec& f, std::uint64_t p) {
  const size_t d = f.size() - 1;
  if (d == 0) return false;
  PVec x{0, 1};
  PVec xp = x;
  // x^(p^d) by repeated Frobenius
  for (size_t i = 0; i < d; ++i) xp = ppowmod(xp, p, f, p);
  PVec diff = xp;
  // diff -= x
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
  ptrim(diff);
  if (!diff.empty()) return false;
  for (std::uint64_t l : prime_factors(d)) {
    size_t e = d / l;
    PVec y = x;
    for (size_t i = 0; i < e; ++i) y = ppowmod(y, p, f, p);
    PVec g = y;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = static_cast<std::uint32_t>((g[1] + p - 1) % p);
    ptrim(g);
    if (!pgcd(f, g, p).empty() && pgcd(f, g, p).size() - 1 > 0) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> FqField::unpack(FqElem a) const {
  std::vector<std::uint32_t> d(s_);
  std::uint64_t v = a.v;
  for (unsigned i = 0; i < s_; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
  return d;
}

FqElem FqField::pack(const std::vector<std::uint32_t>& digits) const {
  std::uint64_t v = 0;
  for (unsigned i = s_; i-- > 0;) v = v * p_ + (i < digits.size() ? digits[i] : 0);
  return FqElem{static_cast<std::uint32_t>(v)};
}

std::shared_ptr<const FqField> FqField::make(std::uint64_t p, unsigned s) {
  if (s <= 1) return make(p, 1, {});
  // Deterministic built-in modulus: the smallest monic irreducible of
  // degree s in index order on the lower coefficients.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < s; ++i) {
    count *= p;
    if (count > kMaxQ) throw unsupported_error("field size exceeds desk-scale bound 2^20");
  }
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PVec f(s + 1, 0);
    f[s] = 1;
    std::uint64_t v = idx;
    for (unsigned i = 0; i < s; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (irreducible_over_fp(f, p)) return make(p, s, f);
  }
  throw invariant_error("no irreducible modulus found");
}

std::shared_ptr<const FqField> FqField::make(std::uint64_t p, unsigned s,
                                             const std::vector<std::uint32_t>& modulus) {
  if (!is_prime_u64(p)) throw value_error("field characteristic must be prime");
  if (s < 1) throw value_error("extension degree must be positive");
  auto f = std::shared_ptr<FqField>(new FqField());
  f->p_ = p;
  f->s_ = s;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < s; ++i) {
    q *= p;
    if (q > kMaxQ) throw unsupported_error("field size exceeds desk-scale bound 2^20");
  }
  f->q_ = q;
  if (s > 1) {
    if (modulus.size() != s + 1 || modulus[s] != 1)
      throw value_error("modulus must be monic of degree s");
    for (auto c : modulus)
      if (c >= p) throw value_error("modulus coefficients must be reduced mod p");
    if (!irreducible_over_fp(modulus, p)) throw value_error("modulus is not irreducible over F_p");
    f->modulus_ = modulus;
  } else if (!modulus.empty()) {
    throw value_error("prime fields take no modulus");
  }
  f->init_tables();
  return f;
}

FqElem FqField::mul_slow(FqElem a, FqElem b) const {
  if (s_ == 1) return FqElem{static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};
  PVec prod = pmul(unpack(a), unpack(b), p_);
  ptrim(prod);
  if (prod.empty()) return zero();
  prod = pmod(std::move(prod), modulus_, p_);
  return pack(prod);
}

void FqField::init_tables() {
  q1_primes_.clear();
  if (q_ > 1)
    for (auto l : prime_factors(q_ - 1)) q1_primes_.push_back(l);

  tables_ = q_ <= kTableLimit;
  if (tables_) {
    mul_table_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
      for (std::uint64_t b = a; b < q_; ++b) {
        std::uint32_t r = mul_slow(FqElem{(std::uint32_t)a}, FqElem{(std::uint32_t)b}).v;
        mul_table_[a * q_ + b] = r;
        mul_table_[b * q_ + a] = r;
      }
  }

  // Primitive root: smallest index whose order is exactly q - 1.
  auto order_is_q1 = [&](FqElem a) {
    for (auto l : q1_primes_) {
      FqElem t = a;
      std::uint64_t e = (q_ - 1) / l;
      FqElem r{1};
      FqElem base = t;
      while (e) {
        if (e & 1) r = tables_ ? FqElem{mul_table_[std::uint64_t(r.v) * q_ + base.v]} : mul_slow(r, base);
        e >>= 1;
        if (e) base = tables_ ? FqElem{mul_table_[std::uint64_t(base.v) * q_ + base.v]} : mul_slow(base, base);
      }
      if (r.v == 1) return false;
    }
    return true;
  };
  beta_ = 1;
  if (q_ > 2) {
    for (std::uint64_t a = 2; a < q_; ++a) {
      if (order_is_q1(FqElem{(std::uint32_t)a})) {
        beta_ = static_cast<std::uint32_t>(a);
        break;
      }
    }
  }

  if (tables_) {
    exp_table_.assign(q_ - 1, 0);
    log_table_.assign(q_, 0);
    FqElem cur{1};
    for (std::uint64_t j = 0; j < q_ - 1; ++j) {
      exp_table_[j] = cur.v;
      log_table_[cur.v] = static_cast<std::uint32_t>(j);
      cur = FqElem{mul_table_[std::uint64_t(cur.v) * q_ + beta_]};
    }
    inv_table_.assign(q_, 0);
    for (std::uint64_t a = 1; a < q_; ++a) {
      std::uint64_t j = log_table_[a];
      inv_table_[a] = exp_table_[(q_ - 1 - j) % (q_ - 1)];
    }
  } else {
    // BSGS baby table for dlog.
    std::uint64_t n = q_ - 1;
    bsgs_m_ = 1;
    while (bsgs_m_ * bsgs_m_ < n) ++bsgs_m_;
    bsgs_baby_.clear();
    bsgs_baby_.reserve(bsgs_m_);
    FqElem cur{1};
    for (std::uint64_t j = 0; j < bsgs_m_; ++j) {
      bsgs_baby_.emplace_back(cur.v, static_cast<std::uint32_t>(j));
      cur = mul_slow(cur, FqElem{beta_});
    }
    std::sort(bsgs_baby_.begin(), bsgs_baby_.end());
    // beta^{-m} = beta^{q-1-m}
    FqElem g{1};
    std::uint64_t e = q_ - 1 - bsgs_m_ % (q_ - 1);
    FqElem base{beta_};
    while (e) {
      if (e & 1) g = mul_slow(g, base);
      e >>= 1;
      if (e) base = mul_slow(base, base);
    }
    bsgs_giant_ = g.v;
  }
}

FqElem FqField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return FqElem{static_cast<std::uint32_t>(r)};
}

FqElem FqField::elem(std::uint64_t index) const {
  if (index >= q_) throw value_error("element index out of range");
  return FqElem{static_cast<std::uint32_t>(index)};
}

FqElem FqField::add(FqElem a, FqElem b) const {
  if (s_ == 1) {
    std::uint64_t r = a.v + b.v;
    if (r >= p_) r -= p_;
    return FqElem{static_cast<std::uint32_t>(r)};
  }
  auto da = unpack(a), db = unpack(b);
  for (unsigned i = 0; i < s_; ++i) {
    da[i] += db[i];
    if (da[i] >= p_) da[i] -= static_cast<std::uint32_t>(p_);
  }
  return pack(da);
}

FqElem FqField::neg(FqElem a) const {
  if (s_ == 1) return FqElem{a.v == 0 ? 0u : static_cast<std::uint32_t>(p_ - a.v)};
  auto d = unpack(a);
  for (auto& c : d) c = c == 0 ? 0 : static_cast<std::uint32_t>(p_ - c);
  return pack(d);
}

FqElem FqField::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FqField::mul(FqElem a, FqElem b) const {
  if (tables_) return FqElem{mul_table_[std::uint64_t(a.v) * q_ + b.v]};
  return mul_slow(a, b);
}

FqElem FqField::inv(FqElem a) const {
  if (a.v == 0) throw value_error("division by zero in F_q");
  if (tables_) return FqElem{inv_table_[a.v]};
  return pow(a, static_cast<std::int64_t>(q_) - 2);
}

FqElem FqField::pow(FqElem a, std::int64_t e) const {
  if (a.v == 0) {
    if (e < 0) throw value_error("division by zero in F_q");
    return e == 0 ? one() : zero();
  }
  std::uint64_t n = q_ - 1;
  std::int64_t r = e % static_cast<std::int64_t>(n);
  if (r < 0) r += static_cast<std::int64_t>(n);
  std::uint64_t ee = static_cast<std::uint64_t>(r);
  FqElem acc{1}, base = a;
  while (ee) {
    if (ee & 1) acc = mul(acc, base);
    ee >>= 1;
    if (ee) base = mul(base, base);
  }
  return acc;
}

FqElem FqField::primitive_root() const { return FqElem{beta_}; }

std::int64_t FqField::dlog(FqElem x) const {
  if (x.v == 0) throw value_error("dlog of zero");
  if (tables_) return log_table_[x.v];
  // BSGS: x * (beta^{-m})^i hits the baby table.
  FqElem cur = x;
  for (std::uint64_t i = 0; i <= bsgs_m_; ++i) {
    auto it = std::lower_bound(bsgs_baby_.begin(), bsgs_baby_.end(),
                               std::make_pair(cur.v, std::uint32_t{0}));
    if (it != bsgs_baby_.end() && it->first == cur.v)
      return static_cast<std::int64_t>((i * bsgs_m_ + it->second) % (q_ - 1));
    cur = mul(cur, FqElem{bsgs_giant_});
  }
  throw invariant_error("BSGS dlog failed");
}

std::int64_t FqField::lth_power_class(FqElem x, std::int64_t l) const {
  if (x.v == 0) throw value_error("lth_power_class of zero");
  if (l <= 0 || (q_ - 1) % static_cast<std::uint64_t>(l) != 0)
    throw unsupported_error("l must divide q - 1");
  return dlog(x) % l;
}

std::int64_t FqField::mu_index(FqElem z, std::int64_t l) const {
  if (l <= 0 || (q_ - 1) % static_cast<std::uint64_t>(l) != 0)
    throw unsupported_error("l must divide q - 1");
  if (pow(z, l).v != 1) throw value_error("element is not an l-th root of unity");
  std::int64_t step = static_cast<std::int64_t>((q_ - 1) / l);
  std::int64_t d = dlog(z);
  check_invariant(d % step == 0, "mu_index: dlog not a multiple of (q-1)/l");
  return (d / step) % l;
}

std::int64_t FqField::multiplicative_order(FqElem a) const {
  if (a.v == 0) throw value_error("order of zero");
  std::uint64_t n = q_ - 1;
  for (auto l : q1_primes_)
    while (n % l == 0 && pow(a, static_cast<std::int64_t>(n / l)).v == 1) n /= l;
  return static_cast<std::int64_t>(n);
}

std::int64_t FqField::order_mod_lth_powers(FqElem x, std::int64_t l) const {
  if ((q_ - 1) % static_cast<std::uint64_t>(l) != 0)
    throw unsupported_error("l must divide q - 1");
  std::int64_t t = lth_power_class(x, l);
  return l / std::gcd(l, t == 0 ? l : t);
}

namespace {

// Splits "a+b+c" at top level (no parentheses nesting in field literals).
std::vector<std::string> split_terms(const std::string& text) {
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
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

FqElem FqField::parse(const std::string& raw) const {
  std::string text = strip(raw);
  if (!text.empty() && text.front() == '(' && text.back() == ')')
    text = strip(text.substr(1, text.size() - 2));
  if (text.empty()) throw parse_error("empty field literal");
  FqElem acc = zero();
  for (const std::string& t0 : split_terms(text)) {
    std::string t = strip(t0);
    if (t.empty()) throw parse_error("empty term in field literal");
    // term: INT | [INT '*'] 'g' ['^' INT]
    std::uint64_t coeff = 1;
    size_t pos = 0;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(t[pos]))) {
      std::uint64_t n = 0;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
        n = n * 10 + (t[pos++] - '0');
      coeff = n;
      have_coeff = true;
      while (pos < t.size() && t[pos] == ' ') ++pos;
      if (pos < t.size() && t[pos] == '*') {
        ++pos;
        while (pos < t.size() && t[pos] == ' ') ++pos;
      }
    }
    unsigned expo = 0;
    if (pos < t.size()) {
      if (t[pos] != 'g') throw parse_error("bad field literal term: " + t);
      ++pos;
      expo = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
          throw parse_error("bad exponent in field literal: " + t);
        std::uint64_t n = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
          n = n * 10 + (t[pos++] - '0');
        expo = static_cast<unsigned>(n);
      }
    } else if (!have_coeff) {
      throw parse_error("bad field literal term: " + t);
    }
    if (pos != t.size()) throw parse_error("trailing junk in field literal: " + t);
    if (expo > 0 && s_ == 1) throw parse_error("generator 'g' is not valid in a prime field");
    // coeff * g^expo
    FqElem term = from_int(static_cast<std::int64_t>(coeff % p_));
    if (expo > 0) {
      FqElem g = elem(p_);  // the generator has index p
      term = mul(term, pow(g, static_cast<std::int64_t>(expo)));
    }
    acc = add(acc, term);
  }
  return acc;
}

std::string FqField::format(FqElem a) const {
  if (s_ == 1) return std::to_string(a.v);
  auto d = unpack(a);
  std::ostringstream os;
  bool first = true;
  for (unsigned i = s_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << d[i];
    } else {
      if (d[i] != 1) os << d[i] << '*';
      os << 'g';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace fqgenus
