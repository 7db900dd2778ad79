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

#include "fqgenus/units.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace fqgenus {

namespace {

constexpr std::uint64_t kBsgsBound = 1ull << 24;

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Poly poly_inverse_mod(const Poly& a, const Poly& mod) {
  auto [g, u, v] = poly_xgcd(a, mod);
  if (!g.is_one()) throw value_error("element not invertible mod " + mod.format());
  return u % mod;
}

}  // namespace

ResidueUnitGroup::LocalFactor ResidueUnitGroup::build_local(const FqFieldPtr& F, const Poly& p,
                                                            int alpha) {
  LocalFactor lf;
  lf.prime = p;
  lf.alpha = alpha;
  lf.prime_power = Poly::one(F);
  for (int i = 0; i < alpha; ++i) lf.prime_power = lf.prime_power * p;
  lf.res_degree = p.degree();

  mpz_class res_order_z = 1;
  for (int i = 0; i < lf.res_degree; ++i) res_order_z *= static_cast<unsigned long>(F->q());
  res_order_z -= 1;
  if (res_order_z > static_cast<unsigned long>(kBsgsBound))
    throw unsupported_error("residue field order beyond the 2^24 BSGS bound: " + p.format());
  lf.res_order = res_order_z.get_ui();

  // Primitive root of the residue field, deterministic smallest index.
  if (lf.res_order > 1) {
    auto lprimes = prime_factors_u64(lf.res_order);
    bool found = false;
    for (std::uint64_t idx = 1; idx <= lf.res_order && !found; ++idx) {
      Poly cand = Poly::from_index(F, idx, static_cast<unsigned>(lf.res_degree));
      if (cand.is_zero()) continue;
      bool ok = true;
      for (auto l : lprimes) {
        Poly pow = poly_powmod(cand, mpz_class(static_cast<unsigned long>(lf.res_order / l)), p);
        if (pow.is_one()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        lf.beta_res = cand;
        found = true;
      }
    }
    check_invariant(found, "no primitive root found in residue field");
    lf.has_cyclic = true;
  } else {
    lf.beta_res = Poly::one(F);
    lf.has_cyclic = false;
  }

  // Teichmuller lift: raise the residue primitive root to p^e with
  // p^e = 1 mod (q^d - 1) and e >= ceil(log_p alpha); this keeps the
  // residue image and kills the one-unit component.
  std::vector<Poly> gens;
  if (lf.has_cyclic) {
    Poly lift = lf.beta_res;
    if (alpha > 1) {
      std::uint64_t ord_p = 1;
      std::uint64_t pw = F->p() % lf.res_order;
      while (pw != 1 % lf.res_order) {
        pw = (pw * (F->p() % lf.res_order)) % lf.res_order;
        ++ord_p;
      }
      unsigned needed = 0;
      std::uint64_t pe = 1;
      while (pe < static_cast<std::uint64_t>(alpha)) {
        pe *= F->p();
        ++needed;
      }
      std::uint64_t e = ord_p;
      while (e < needed) e += ord_p;
      mpz_class exp_z;
      mpz_ui_pow_ui(exp_z.get_mpz_t(), static_cast<unsigned long>(F->p()),
                    static_cast<unsigned long>(e));
      lift = poly_powmod(lift, exp_z, lf.prime_power);
    }
    gens.push_back(lift);
  }

  // One-unit generators 1 + c T^a P^j for the F_p-basis elements c T^a.
  for (int j = 1; j < alpha; ++j) {
    Poly pj = Poly::one(F);
    for (int i = 0; i < j; ++i) pj = pj * p;
    for (int a = 0; a < lf.res_degree; ++a)
      for (unsigned b = 0; b < F->s(); ++b) {
        FqElem c = F->elem(1);
        for (unsigned t = 0; t < b; ++t) c = F->mul(c, F->elem(F->p()));
        std::vector<FqElem> mono(static_cast<size_t>(a) + 1, F->zero());
        mono[static_cast<size_t>(a)] = c;
        Poly gen = (Poly::one(F) + Poly(F, mono) * pj) % lf.prime_power;
        gens.push_back(gen);
      }
  }
  lf.gens = gens;
  lf.gens_inv.reserve(gens.size());
  for (const auto& g : gens) lf.gens_inv.push_back(poly_inverse_mod(g, lf.prime_power));

  // Relations.
  const size_t n = gens.size();
  lf.relations = Mat(n, n);
  size_t row = 0;
  if (lf.has_cyclic) {
    lf.relations.at(0, 0) = static_cast<unsigned long>(lf.res_order);
    row = 1;
  }
  for (size_t k = (lf.has_cyclic ? 1 : 0); k < n; ++k, ++row) {
    Poly gp = poly_powmod(lf.gens[k], mpz_class(static_cast<unsigned long>(F->p())),
                          lf.prime_power);
    auto digits = one_unit_descent(lf, gp);
    lf.relations.at(row, k) += static_cast<unsigned long>(F->p());
    size_t base = lf.has_cyclic ? 1 : 0;
    for (size_t t = 0; t < digits.size(); ++t) lf.relations.at(row, base + t) -= digits[t];
  }

  // BSGS tables for the residue field.
  if (lf.has_cyclic) {
    std::uint64_t nn = lf.res_order;
    lf.bsgs_m = 1;
    while (lf.bsgs_m * lf.bsgs_m < nn) ++lf.bsgs_m;
    Poly cur = Poly::one(F);
    lf.baby.reserve(lf.bsgs_m);
    for (std::uint64_t j = 0; j < lf.bsgs_m; ++j) {
      lf.baby.emplace_back(cur.to_index(static_cast<unsigned>(lf.res_degree)),
                           static_cast<std::uint32_t>(j));
      cur = (cur * lf.beta_res) % p;
    }
    std::sort(lf.baby.begin(), lf.baby.end());
    lf.giant = poly_powmod(lf.beta_res,
                           mpz_class(static_cast<unsigned long>(lf.res_order - lf.bsgs_m % lf.res_order)),
                           p);
  }
  return lf;
}

std::vector<mpz_class> ResidueUnitGroup::one_unit_descent(const LocalFactor& lf, Poly v) {
  const auto& F = v.field();
  const int d = lf.res_degree;
  const unsigned s = F->s();
  const size_t per_level = static_cast<size_t>(d) * s;
  std::vector<mpz_class> digits(per_level * static_cast<size_t>(lf.alpha - 1), 0);
  Poly pj = lf.prime;  // P^j
  for (int j = 1; j < lf.alpha; ++j) {
    // v = 1 + w P^j mod P^(j+1); extract w in F_q[T]/P.
    Poly diff = (v - Poly::one(F));
    Poly pj1 = pj * lf.prime;
    Poly low = diff % pj1;
    if (!low.is_zero()) {
      auto [quot, rem] = low.divmod(pj);
      check_invariant(rem.is_zero(), "one-unit descent: unexpected valuation");
      Poly w = quot % lf.prime;
      // digits of w over the F_p-basis {g^b T^a}
      for (int a = 0; a <= w.degree(); ++a) {
        std::uint32_t idx = w.coeff(a).v;
        for (unsigned b = 0; b < s && idx != 0; ++b) {
          std::uint32_t m = idx % F->p();
          idx /= static_cast<std::uint32_t>(F->p());
          if (m == 0) continue;
          size_t gen_pos = per_level * static_cast<size_t>(j - 1) +
                           static_cast<size_t>(a) * s + b;
          digits[gen_pos] = m;
          // multiply v by gen^{-m}
          const Poly& ginv = lf.gens_inv[(lf.has_cyclic ? 1 : 0) + gen_pos];
          Poly gm = poly_powmod(ginv, mpz_class(m), lf.prime_power);
          v = (v * gm) % lf.prime_power;
        }
      }
    }
    pj = pj1;
  }
  check_invariant(v.is_one(), "one-unit descent did not terminate at 1");
  return digits;
}

std::uint64_t ResidueUnitGroup::res_dlog(const LocalFactor& lf, const Poly& u) const {
  if (lf.res_order == 1) return 0;
  Poly cur = u % lf.prime;
  check_invariant(!cur.is_zero(), "residue dlog of zero");
  for (std::uint64_t i = 0; i <= lf.bsgs_m; ++i) {
    std::uint64_t key = cur.to_index(static_cast<unsigned>(lf.res_degree));
    auto it = std::lower_bound(lf.baby.begin(), lf.baby.end(),
                               std::make_pair(key, std::uint32_t{0}));
    if (it != lf.baby.end() && it->first == key)
      return (i * lf.bsgs_m + it->second) % lf.res_order;
    cur = (cur * lf.giant) % lf.prime;
  }
  throw invariant_error("BSGS failed in residue field");
}

ResidueUnitGroupPtr ResidueUnitGroup::make(const Poly& n) { return make(factorize(n)); }

ResidueUnitGroupPtr ResidueUnitGroup::make(const FactoredPoly& n) {
  if (n.factors.empty()) throw value_error("unit group needs a modulus of degree >= 1");
  auto g = std::shared_ptr<ResidueUnitGroup>(new ResidueUnitGroup());
  g->F_ = n.field;
  g->N_ = n;
  g->N_.unit = g->F_->one();  // the modulus is monic by convention
  g->Npoly_ = g->N_.value();

  size_t total = 0;
  for (const auto& [p, a] : n.factors) {
    g->locals_.push_back(build_local(g->F_, p, a));
    g->gen_offset_.push_back(total);
    total += g->locals_.back().gens.size();
  }

  // Global generators by CRT; global relations are block diagonal.
  Mat rel(total, total);
  for (size_t i = 0; i < g->locals_.size(); ++i) {
    const auto& lf = g->locals_[i];
    Poly cof = g->Npoly_ / lf.prime_power;
    Poly cof_inv = poly_inverse_mod(cof % lf.prime_power, lf.prime_power);
    Poly idem = (cof * cof_inv) % g->Npoly_;  // 1 mod P^a, 0 elsewhere
    for (size_t k = 0; k < lf.gens.size(); ++k) {
      Poly lifted = (Poly::one(g->F_) + idem * (lf.gens[k] - Poly::one(g->F_))) % g->Npoly_;
      g->global_gens_.push_back(lifted);
      for (size_t c = 0; c < lf.gens.size(); ++c)
        rel.at(g->gen_offset_[i] + k, g->gen_offset_[i] + c) = lf.relations.at(k, c);
    }
  }
  g->pres_ = group_from_relations(total, rel);
  check_invariant(g->pres_.group.order() == n.euler_phi(),
                  "unit group order does not match euler phi");

  for (const auto& lf : g->locals_)
    g->local_pres_.push_back(group_from_relations(lf.gens.size(), lf.relations));

  // Image of the constants.
  std::vector<GroupElem> fq_gens;
  fq_gens.push_back(g->encode(Poly::constant(g->F_, g->F_->primitive_root())));
  g->fq_image_ = Subgroup::from_generators(g->pres_.group, fq_gens);

  return g;
}

ResidueUnitGroupPtr ResidueUnitGroup::shared(const Poly& n) {
  static std::mutex mu;
  static std::map<std::string, ResidueUnitGroupPtr> cache;
  std::ostringstream key;
  key << n.field()->p() << '^' << n.field()->s();
  for (auto c : n.field()->modulus()) key << ',' << c;
  key << '|' << n.format();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;
  auto g = make(n);
  cache.emplace(key.str(), g);
  return g;
}

size_t ResidueUnitGroup::factor_index(const Poly& p) const {
  for (size_t i = 0; i < locals_.size(); ++i)
    if (locals_[i].prime == p) return i;
  throw value_error("prime does not divide the modulus: " + p.format());
}

GroupElem ResidueUnitGroup::encode(const Poly& u) const {
  Poly red = u % Npoly_;
  if (!poly_gcd(red, Npoly_).is_one()) throw value_error("encode: element not coprime to modulus");
  std::vector<mpz_class> gen_exp;
  for (const auto& lf : locals_) {
    Poly ul = red % lf.prime_power;
    std::uint64_t a = 0;
    if (lf.has_cyclic) a = res_dlog(lf, ul);
    if (lf.alpha == 1) {
      if (lf.has_cyclic) gen_exp.push_back(static_cast<unsigned long>(a));
    } else {
      Poly v = ul;
      if (lf.has_cyclic) {
        Poly tinv = poly_powmod(lf.gens_inv[0], mpz_class(static_cast<unsigned long>(a)),
                                lf.prime_power);
        v = (v * tinv) % lf.prime_power;
        gen_exp.push_back(static_cast<unsigned long>(a));
      }
      auto digits = one_unit_descent(lf, v);
      for (auto& d : digits) gen_exp.push_back(d);
    }
  }
  Mat col(gen_exp.size(), 1);
  for (size_t i = 0; i < gen_exp.size(); ++i) col.at(i, 0) = gen_exp[i];
  Mat out = mat_mul(pres_.to_invariant, col);
  GroupElem e(out.rows);
  for (size_t i = 0; i < out.rows; ++i) e[i] = out.at(i, 0);
  return pres_.group.reduce(std::move(e));
}

Poly ResidueUnitGroup::decode(const GroupElem& g) const {
  check_invariant(g.size() == pres_.group.rank(), "decode: rank mismatch");
  Mat col(g.size(), 1);
  for (size_t i = 0; i < g.size(); ++i) col.at(i, 0) = g[i];
  Mat gen = mat_mul(pres_.from_invariant, col);
  Poly out = Poly::one(F_);
  for (size_t i = 0; i < gen.rows; ++i) {
    mpz_class e = gen.at(i, 0);
    const Poly& base = e >= 0 ? global_gens_[i] : poly_inverse_mod(global_gens_[i], Npoly_);
    mpz_class ee = abs(e);
    out = (out * poly_powmod(base, ee, Npoly_)) % Npoly_;
  }
  return out;
}

ResidueUnitGroupPtr ResidueUnitGroup::local_group(size_t i) const {
  if (locals_.size() == 1) return shared_from_this();
  return shared(locals_[i].prime_power);
}

GroupElem ResidueUnitGroup::crt_component(const GroupElem& g, const Poly& p) const {
  size_t i = factor_index(p);
  // Lift to generator exponents, slice the local block, then map through the
  // local presentation.  Well defined because the relations are block diagonal.
  Mat col(g.size(), 1);
  for (size_t j = 0; j < g.size(); ++j) col.at(j, 0) = g[j];
  Mat gen = mat_mul(pres_.from_invariant, col);
  const auto& lf = locals_[i];
  Mat lcol(lf.gens.size(), 1);
  for (size_t k = 0; k < lf.gens.size(); ++k) lcol.at(k, 0) = gen.at(gen_offset_[i] + k, 0);
  Mat out = mat_mul(local_pres_[i].to_invariant, lcol);
  GroupElem e(out.rows);
  for (size_t j = 0; j < out.rows; ++j) e[j] = out.at(j, 0);
  return local_pres_[i].group.reduce(std::move(e));
}

GroupElem ResidueUnitGroup::encode_constant(FqElem c) const {
  return encode(Poly::constant(F_, c));
}

std::vector<Poly> ResidueUnitGroup::invariant_generators() const {
  std::vector<Poly> out;
  for (size_t i = 0; i < pres_.group.rank(); ++i) {
    GroupElem e(pres_.group.rank(), 0);
    e[i] = 1;
    out.push_back(decode(e));
  }
  return out;
}

Subgroup ResidueUnitGroup::local_factor_subgroup(size_t i) const {
  check_invariant(i < locals_.size(), "local factor index out of range");
  std::vector<GroupElem> gens;
  const size_t k = pres_.group.rank();
  for (size_t j = 0; j < locals_[i].gens.size(); ++j) {
    GroupElem e(k, 0);
    for (size_t r = 0; r < k; ++r) e[r] = pres_.to_invariant.at(r, gen_offset_[i] + j);
    gens.push_back(pres_.group.reduce(std::move(e)));
  }
  return Subgroup::from_generators(pres_.group, gens);
}

GroupElem frobenius_class(const ResidueUnitGroup& g, const Poly& q) {
  return g.encode(q);
}

}  // namespace fqgenus
