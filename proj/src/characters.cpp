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

#include "fqgenus/characters.hpp"

#include <functional>
#include <numeric>

namespace fqgenus {

UnityRoot UnityRoot::make(std::int64_t num, std::int64_t den) {
  check_invariant(den > 0, "UnityRoot: nonpositive denominator");
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  if (num == 0) return {0, 1};
  return {num / g, den / g};
}

UnityRoot UnityRoot::operator+(const UnityRoot& o) const {
  std::int64_t l = std::lcm(den, o.den);
  return make(num * (l / den) + o.num * (l / o.den), l);
}

UnityRoot UnityRoot::operator-() const { return make(-num, den); }

UnityRoot UnityRoot::scaled(std::int64_t k) const {
  std::int64_t r = k % den;
  return make(num * r, den);
}

std::int64_t UnityRoot::index_mod(std::int64_t m) const {
  if (m % den != 0) throw value_error("root of unity does not live in mu_m");
  return (num * (m / den)) % m;
}

// ---------------------------------------------------------------------------

DirichletCharacter::DirichletCharacter(ResidueUnitGroupPtr structure, GroupElem dual)
    : G_(std::move(structure)), c_(G_->group().reduce(std::move(dual))) {}

bool DirichletCharacter::is_trivial() const { return G_->group().is_zero(c_); }

UnityRoot DirichletCharacter::evaluate_class(const GroupElem& g) const {
  const auto& mods = G_->group().mods();
  check_invariant(g.size() == mods.size(), "pairing: rank mismatch");
  mpz_class m = G_->group().exponent();
  mpz_class num = 0;
  for (size_t i = 0; i < mods.size(); ++i) num += c_[i] * g[i] * (m / mods[i]);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  check_invariant(r.fits_slong_p() && m.fits_slong_p(), "character value too large");
  return UnityRoot::make(r.get_si(), m.get_si());
}

UnityRoot DirichletCharacter::evaluate(const Poly& b) const {
  return evaluate_class(G_->encode(b));
}

mpz_class DirichletCharacter::order() const { return G_->group().element_order(c_); }

DirichletCharacter DirichletCharacter::product_with(const DirichletCharacter& o) const {
  check_invariant(G_->modulus_poly() == o.G_->modulus_poly(), "character modulus mismatch");
  return {G_, G_->group().add(c_, o.c_)};
}

DirichletCharacter DirichletCharacter::inverse() const { return {G_, G_->group().neg(c_)}; }

DirichletCharacter DirichletCharacter::power(const mpz_class& k) const {
  return {G_, G_->group().smul(k, c_)};
}

namespace {

// Lift u (coprime to the local factor at idx) into a unit mod N that is
// congruent to u at that factor and to 1 at every other factor.
Poly crt_embed(const ResidueUnitGroup& g, size_t idx, const Poly& u) {
  const Poly& n = g.modulus_poly();
  Poly pp = Poly::one(g.field());
  for (int i = 0; i < g.alpha(idx); ++i) pp = pp * g.prime(idx);
  Poly cof = n / pp;
  auto [gc, a, b] = poly_xgcd(cof % pp, pp);
  check_invariant(gc.is_one(), "crt_embed: factors not coprime");
  Poly idem = (cof * (a % pp)) % n;  // 1 mod P^a, 0 elsewhere
  return (Poly::one(g.field()) + idem * ((u % pp) - Poly::one(g.field()))) % n;
}

// Dual coordinates of the character u -> value(u) over the structure H,
// where `value` must be a well-defined character of H.
GroupElem character_from_values(const ResidueUnitGroup& h,
                                const std::function<UnityRoot(const Poly&)>& value) {
  const auto& mods = h.group().mods();
  GroupElem out(mods.size(), 0);
  for (size_t j = 0; j < mods.size(); ++j) {
    GroupElem basis(mods.size(), 0);
    basis[j] = 1;
    UnityRoot v = value(h.decode(basis));
    check_invariant(mods[j].fits_slong_p(), "modulus too large");
    std::int64_t fj = mods[j].get_si();
    if (fj % v.den != 0)
      throw value_error("values do not define a character of the target modulus");
    out[j] = v.num * (fj / v.den);
  }
  return out;
}

}  // namespace

DirichletCharacter DirichletCharacter::component(const Poly& p) const {
  size_t idx = G_->factor_index(p);
  auto local = G_->local_group(idx);
  auto value = [&](const Poly& u) { return evaluate(crt_embed(*G_, idx, u)); };
  return {local, character_from_values(*local, value)};
}

DirichletCharacter DirichletCharacter::prime_to_part(const Poly& p) const {
  size_t idx = G_->factor_index(p);
  FactoredPoly rest = G_->modulus().without(p);
  if (rest.factors.empty()) {
    // trivial modulus: the unique character of the trivial group
    throw value_error("prime_to_part: modulus has a single prime factor");
  }
  auto target = ResidueUnitGroup::shared(rest.value().monic());
  Poly pp = Poly::one(G_->field());
  for (int i = 0; i < G_->alpha(idx); ++i) pp = pp * G_->prime(idx);
  const Poly& n = G_->modulus_poly();
  Poly rest_poly = target->modulus_poly();
  auto value = [&](const Poly& u) {
    // chi evaluated at the lift congruent to u away from P and 1 at P
    auto [gc, a, b] = poly_xgcd(pp % rest_poly, rest_poly);
    check_invariant(gc.is_one(), "prime_to_part: factors not coprime");
    Poly idem = (pp * (a % rest_poly)) % n;  // 1 mod rest, 0 mod P^a
    Poly lift = (Poly::one(G_->field()) + idem * ((u % rest_poly) - Poly::one(G_->field()))) % n;
    return evaluate(lift);
  };
  return {target, character_from_values(*target, value)};
}

int DirichletCharacter::conductor_exponent(const Poly& p) const {
  size_t idx = G_->factor_index(p);
  DirichletCharacter local = component(p);
  if (local.is_trivial()) return 0;
  int alpha = G_->alpha(idx);
  const auto& F = G_->field();
  Poly pp = local.modulus();
  // highest one-unit level where the component is nontrivial
  int top = 0;
  Poly pj = p;
  for (int j = 1; j < alpha; ++j) {
    bool nontrivial = false;
    for (int a = 0; a < p.degree() && !nontrivial; ++a)
      for (unsigned bdig = 0; bdig < F->s() && !nontrivial; ++bdig) {
        FqElem c = F->one();
        for (unsigned t = 0; t < bdig; ++t) c = F->mul(c, F->elem(F->p()));
        std::vector<FqElem> mono(static_cast<size_t>(a) + 1, F->zero());
        mono[static_cast<size_t>(a)] = c;
        Poly gen = (Poly::one(F) + Poly(F, mono) * pj) % pp;
        if (!local.evaluate(gen).is_zero()) nontrivial = true;
      }
    if (nontrivial) top = j;
    pj = pj * p;
  }
  return top + 1;
}

FactoredPoly DirichletCharacter::conductor() const {
  FactoredPoly out;
  out.field = G_->field();
  out.unit = G_->field()->one();
  for (size_t i = 0; i < G_->factor_count(); ++i) {
    int e = conductor_exponent(G_->prime(i));
    if (e > 0) out.factors.emplace_back(G_->prime(i), e);
  }
  return out;
}

DirichletCharacter DirichletCharacter::reduce_to(const ResidueUnitGroupPtr& smaller) const {
  const Poly& m = smaller->modulus_poly();
  const Poly& n = G_->modulus_poly();
  if (!(n % m).is_zero()) throw value_error("reduce_to: target does not divide the modulus");
  auto value = [&](const Poly& u) {
    // lift u to a unit mod N in the same class mod M: adjust at primes of N
    // that do not divide M
    Poly lift = u % n;
    Poly extra = Poly::one(G_->field());
    for (size_t i = 0; i < G_->factor_count(); ++i) {
      if ((m % G_->prime(i)).is_zero()) continue;
      Poly pp = Poly::one(G_->field());
      for (int t = 0; t < G_->alpha(i); ++t) pp = pp * G_->prime(i);
      extra = extra * pp;
    }
    if (!extra.is_one()) {
      // CRT: congruent to u mod M, to 1 mod extra
      auto [gc, a, b] = poly_xgcd(extra % m, m);
      check_invariant(gc.is_one(), "reduce_to: moduli not coprime");
      Poly idem = (extra * (a % m)) % (extra * m);
      lift = (Poly::one(G_->field()) + idem * (u - Poly::one(G_->field()))) % (extra * m);
      lift = lift % n;
    }
    return evaluate(lift);
  };
  DirichletCharacter reduced(smaller, character_from_values(*smaller, value));
  // sanity: inflating back must reproduce this character
  if (!(reduced.inflate_to(G_) == *this))
    throw value_error("character does not factor through the requested modulus");
  return reduced;
}

DirichletCharacter DirichletCharacter::inflate_to(const ResidueUnitGroupPtr& bigger) const {
  const Poly& m = G_->modulus_poly();
  const Poly& n = bigger->modulus_poly();
  if (!(n % m).is_zero()) throw value_error("inflate_to: modulus does not divide the target");
  auto value = [&](const Poly& u) { return evaluate(u % m); };
  return {bigger, character_from_values(*bigger, value)};
}

UnityRoot DirichletCharacter::at_constant(FqElem lambda) const {
  return evaluate_class(G_->encode_constant(lambda));
}

std::int64_t DirichletCharacter::restriction_index() const {
  const auto& F = G_->field();
  UnityRoot v = at_constant(F->primitive_root());
  std::int64_t q1 = static_cast<std::int64_t>(F->q()) - 1;
  if (q1 == 0) return 0;
  return v.index_mod(q1);
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
  return G_->modulus_poly() == o.G_->modulus_poly() && c_ == o.c_;
}

// ---------------------------------------------------------------------------

CharacterGroup::CharacterGroup(ResidueUnitGroupPtr structure, Subgroup sub)
    : G_(std::move(structure)), sub_(std::move(sub)) {}

CharacterGroup CharacterGroup::trivial(ResidueUnitGroupPtr structure) {
  auto& g = structure->group();
  return {structure, Subgroup::trivial(g)};
}

CharacterGroup CharacterGroup::full_dual(ResidueUnitGroupPtr structure) {
  auto& g = structure->group();
  return {structure, Subgroup::full(g)};
}

CharacterGroup CharacterGroup::generated_by(const std::vector<DirichletCharacter>& gens) {
  check_invariant(!gens.empty(), "generated_by: need at least one character");
  auto G = gens.front().structure();
  std::vector<GroupElem> vecs;
  for (const auto& chi : gens) {
    check_invariant(chi.structure()->modulus_poly() == G->modulus_poly(),
                    "generated_by: modulus mismatch");
    vecs.push_back(chi.dual());
  }
  return {G, Subgroup::from_generators(G->group(), vecs)};
}

bool CharacterGroup::contains(const DirichletCharacter& chi) const {
  return sub_.contains(chi.dual());
}

bool CharacterGroup::contains_group(const CharacterGroup& o) const {
  return sub_.contains_subgroup(o.sub_);
}

CharacterGroup CharacterGroup::product_with(const CharacterGroup& o) const {
  check_invariant(G_->modulus_poly() == o.G_->modulus_poly(), "character group modulus mismatch");
  return {G_, sub_.sum(o.sub_)};
}

bool CharacterGroup::operator==(const CharacterGroup& o) const {
  return G_->modulus_poly() == o.G_->modulus_poly() && sub_ == o.sub_;
}

std::vector<DirichletCharacter> CharacterGroup::generators() const {
  std::vector<DirichletCharacter> out;
  for (auto& g : sub_.generators()) out.emplace_back(G_, g);
  return out;
}

std::vector<DirichletCharacter> CharacterGroup::elements(unsigned long limit) const {
  std::vector<DirichletCharacter> out;
  for (auto& g : sub_.elements(limit)) out.emplace_back(G_, g);
  return out;
}

Mat CharacterGroup::component_matrix(const Poly& p) const {
  size_t idx = G_->factor_index(p);
  auto local = G_->local_group(idx);
  const size_t k = G_->group().rank();
  const size_t kl = local->group().rank();
  Mat m(kl, k);
  for (size_t i = 0; i < k; ++i) {
    GroupElem basis(k, 0);
    basis[i] = 1;
    DirichletCharacter chi(G_, basis);
    GroupElem comp = chi.component(p).dual();
    for (size_t j = 0; j < kl; ++j) m.at(j, i) = comp[j];
  }
  return m;
}

CharacterGroup CharacterGroup::p_component_group(const Poly& p) const {
  size_t idx = G_->factor_index(p);
  auto local = G_->local_group(idx);
  Mat m = component_matrix(p);
  return {local, hom_image(m, local->group(), sub_)};
}

Mat CharacterGroup::restriction_matrix() const {
  const size_t k = G_->group().rank();
  Mat m(1, k);
  for (size_t i = 0; i < k; ++i) {
    GroupElem basis(k, 0);
    basis[i] = 1;
    DirichletCharacter chi(G_, basis);
    m.at(0, i) = chi.restriction_index();
  }
  return m;
}

Subgroup CharacterGroup::restriction_group() const {
  AbGroup target({mpz_class(static_cast<unsigned long>(G_->field()->q() - 1))});
  if (G_->field()->q() == 2) target = AbGroup({mpz_class(1)});
  return hom_image(restriction_matrix(), target, sub_);
}

mpz_class CharacterGroup::restriction_order() const { return restriction_group().order(); }

FactoredPoly CharacterGroup::conductor() const {
  FactoredPoly out;
  out.field = G_->field();
  out.unit = G_->field()->one();
  for (size_t i = 0; i < G_->factor_count(); ++i) {
    int e = 0;
    for (const auto& chi : generators()) e = std::max(e, chi.conductor_exponent(G_->prime(i)));
    if (e > 0) out.factors.emplace_back(G_->prime(i), e);
  }
  return out;
}

}  // namespace fqgenus
