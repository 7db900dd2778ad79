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

#include "fqgenus/cyclofield.hpp"

#include <algorithm>
#include <sstream>

namespace fqgenus {

CyclotomicField CyclotomicField::rationals(const FqFieldPtr& f) {
  auto g = ResidueUnitGroup::shared(Poly::variable(f));
  return CyclotomicField(CharacterGroup::trivial(g));
}

RamificationReport CyclotomicField::ramification() const {
  RamificationReport rep;
  rep.degree = degree();
  const auto& g = *X_.structure();
  auto gal = galois_group();
  for (size_t i = 0; i < g.factor_count(); ++i) {
    PrimeRamification pr;
    pr.prime = g.prime(i);
    pr.e = X_.p_component_group(pr.prime).order();
    // inertia image in Gal(E/k); dual route to e_P = |X_P|
    Subgroup inertia = hom_image(gal.projection, gal.group, g.local_factor_subgroup(i));
    check_invariant(inertia.order() == pr.e, "inertia image does not match |X_P|");
    if (g.factor_count() == 1) {
      pr.f = 1;
      // the prime-to-P quotient is trivial, so the Frobenius is too
    } else {
      // Frobenius lift: a unit congruent to P away from P and to 1 at P;
      // f_P = [D_P : I_P] with D_P = <I_P, sigma>.
      FactoredPoly rest = g.modulus().without(pr.prime);
      Poly rest_poly = rest.value().monic();
      Poly pp = Poly::one(g.field());
      for (int t = 0; t < g.alpha(i); ++t) pp = pp * pr.prime;
      auto [gc, a, b] = poly_xgcd(pp % rest_poly, rest_poly);
      check_invariant(gc.is_one(), "modulus factors are not coprime");
      Poly idem = (pp * (a % rest_poly)) % g.modulus_poly();  // 1 mod rest, 0 mod P^a
      Poly sigma_poly =
          (Poly::one(g.field()) + idem * (pr.prime - Poly::one(g.field()))) % g.modulus_poly();
      GroupElem sigma = hom_apply(gal.projection, gal.group, g.encode(sigma_poly));
      Subgroup dec = inertia.sum(Subgroup::from_generators(gal.group, {sigma}));
      pr.f = dec.order() / inertia.order();
    }
    mpz_class ef = pr.e * pr.f;
    check_invariant(rep.degree % ef == 0, "ramification: e*f does not divide the degree");
    pr.g = rep.degree / ef;
    rep.finite.push_back(std::move(pr));
  }
  rep.e_infinity = X_.restriction_order();
  rep.f_infinity = 1;
  check_invariant(rep.degree % rep.e_infinity == 0, "ramification: e_infinity | degree fails");
  rep.g_infinity = rep.degree / rep.e_infinity;
  mpz_class q1 = static_cast<unsigned long>(X_.structure()->field()->q() - 1);
  if (q1 > 0) check_invariant(q1 % rep.e_infinity == 0, "e_infinity must divide q - 1");
  rep.constant_degree = 1;
  return rep;
}

std::pair<mpz_class, mpz_class> CyclotomicField::unramified_prime_data(const Poly& q) const {
  GroupElem frob = X_.structure()->encode(q);
  mpz_class f = 1;
  for (const auto& chi : X_.generators()) f = lcm(f, mpz_class(chi.evaluate_class(frob).den));
  return {mpz_class(1), f};
}

CyclotomicField CyclotomicField::extended_genus() const {
  const auto& g = *X_.structure();
  std::vector<DirichletCharacter> gens;
  for (const auto& chi : X_.generators())
    for (size_t i = 0; i < g.factor_count(); ++i)
      gens.push_back(chi.component(g.prime(i)).inflate_to(X_.structure()));
  if (gens.empty()) return *this;
  CyclotomicField out{CharacterGroup::generated_by(gens)};
  check_invariant(out.X_.contains_group(X_), "extended genus must contain the field");
  return out;
}

CyclotomicField CyclotomicField::genus() const {
  CyclotomicField ge = extended_genus();
  // X_g = { chi in Y : chi|constants lies in the restriction group of X }
  Mat rho = X_.restriction_matrix();
  mpz_class q1 = static_cast<unsigned long>(X_.structure()->field()->q());
  q1 -= 1;
  AbGroup target({q1 > 0 ? q1 : mpz_class(1)});
  Subgroup rx = hom_image(rho, target, X_.subgroup());
  Subgroup candidates = hom_preimage(rho, X_.structure()->group(), rx);
  Subgroup xg = candidates.intersect(ge.X_.subgroup());
  CyclotomicField out{CharacterGroup(X_.structure(), xg)};
  check_invariant(out.X_.contains_group(X_), "genus must contain the field");
  check_invariant(ge.X_.contains_group(out.X_), "genus must sit inside the extended genus");
  check_invariant(out.X_.restriction_order() == X_.restriction_order(),
                  "genus must preserve e_infinity");
  return out;
}

QuotientStructure CyclotomicField::galois_group() const {
  Subgroup ker = annihilator(X_.subgroup());
  return quotient_structure(X_.structure()->group(), ker);
}

Subgroup CyclotomicField::infinity_inertia_image() const {
  auto gal = galois_group();
  return hom_image(gal.projection, gal.group, X_.structure()->fq_star_image());
}

CyclotomicField CyclotomicField::fixed_field(const Subgroup& s) const {
  auto gal = galois_group();
  if (!(s.ambient() == gal.group)) throw value_error("fixed_field: subgroup not in Gal(E/k)");
  Subgroup pre = hom_preimage(gal.projection, X_.structure()->group(), s);
  Subgroup xf = X_.subgroup().intersect(annihilator(pre));
  return CyclotomicField{CharacterGroup(X_.structure(), xf)};
}

namespace {

Poly lcm_modulus(const CyclotomicField& a, const CyclotomicField& b) {
  auto fa = a.structure()->modulus();
  auto fb = b.structure()->modulus();
  FactoredPoly out;
  out.field = fa.field;
  out.unit = fa.field->one();
  for (const auto& [p, e] : fa.factors) {
    int eb = fb.exponent_of(p);
    out.factors.emplace_back(p, std::max(e, eb));
  }
  for (const auto& [p, e] : fb.factors)
    if (fa.exponent_of(p) == 0) out.factors.emplace_back(p, e);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return Poly::compare(x.first, y.first) < 0; });
  return out.value();
}

}  // namespace

CyclotomicField CyclotomicField::inflated_to(const Poly& modulus) const {
  auto target = ResidueUnitGroup::shared(modulus.monic());
  std::vector<GroupElem> vecs;
  for (const auto& chi : X_.generators()) vecs.push_back(chi.inflate_to(target).dual());
  return CyclotomicField{
      CharacterGroup(target, Subgroup::from_generators(target->group(), vecs))};
}

CyclotomicField CyclotomicField::compositum(const CyclotomicField& a, const CyclotomicField& b) {
  Poly m = lcm_modulus(a, b);
  auto ia = a.inflated_to(m), ib = b.inflated_to(m);
  return CyclotomicField{ia.X_.product_with(ib.X_)};
}

CyclotomicField CyclotomicField::intersection(const CyclotomicField& a, const CyclotomicField& b) {
  Poly m = lcm_modulus(a, b);
  auto ia = a.inflated_to(m), ib = b.inflated_to(m);
  return CyclotomicField{
      CharacterGroup(ia.structure(), ia.X_.subgroup().intersect(ib.X_.subgroup()))};
}

bool CyclotomicField::is_subfield(const CyclotomicField& a, const CyclotomicField& b) {
  Poly m = lcm_modulus(a, b);
  auto ia = a.inflated_to(m), ib = b.inflated_to(m);
  return ib.X_.contains_group(ia.X_);
}

CyclotomicField CyclotomicField::reduced_to_conductor() const {
  FactoredPoly cond = X_.conductor();
  if (cond.factors.empty()) return rationals(X_.structure()->field());
  Poly m = cond.value().monic();
  if (m == X_.structure()->modulus_poly()) return *this;
  auto target = ResidueUnitGroup::shared(m);
  std::vector<GroupElem> vecs;
  for (const auto& chi : X_.generators()) vecs.push_back(chi.reduce_to(target).dual());
  return CyclotomicField{
      CharacterGroup(target, Subgroup::from_generators(target->group(), vecs))};
}

std::string CyclotomicField::canonical_key() const {
  CyclotomicField c = reduced_to_conductor();
  std::ostringstream os;
  const auto& f = c.structure()->field();
  os << f->p() << '^' << f->s();
  for (auto m : f->modulus()) os << ',' << m;
  if (c.is_rational()) {
    os << "|k";
    return os.str();
  }
  os << '|' << c.structure()->modulus_poly().format() << '|';
  const Mat& h = c.X_.subgroup().basis();
  for (size_t i = 0; i < h.rows; ++i)
    for (size_t j = 0; j < h.cols; ++j) os << h.at(i, j) << ';';
  return os.str();
}

bool CyclotomicField::same_field(const CyclotomicField& o) const {
  return canonical_key() == o.canonical_key();
}

}  // namespace fqgenus
