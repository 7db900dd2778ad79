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

#ifndef FQGENUS_CHARACTERS_HPP
#define FQGENUS_CHARACTERS_HPP

#include <cstdint>
#include <vector>

#include "fqgenus/units.hpp"

namespace fqgenus {

/// Exact root of unity exp(2 pi i num/den), reduced with 0 <= num < den.
/// Character values never touch floating point.
struct UnityRoot {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static UnityRoot make(std::int64_t num, std::int64_t den);
  static UnityRoot zero() { return {0, 1}; }
  bool is_zero() const { return num == 0; }
  std::int64_t order() const { return den; }
  UnityRoot operator+(const UnityRoot& o) const;
  UnityRoot operator-() const;
  UnityRoot scaled(std::int64_t k) const;
  /// Index j with value = zeta_m^j; requires den | m.
  std::int64_t index_mod(std::int64_t m) const;
  bool operator==(const UnityRoot& o) const = default;
};

/// Dirichlet character mod N: a dual vector over the invariant basis of
/// (F_q[T]/N)^*, evaluated exactly as mu_m indices.
class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  DirichletCharacter(ResidueUnitGroupPtr structure, GroupElem dual);

  const ResidueUnitGroupPtr& structure() const { return G_; }
  const Poly& modulus() const { return G_->modulus_poly(); }
  const GroupElem& dual() const { return c_; }
  bool is_trivial() const;

  UnityRoot evaluate(const Poly& b) const;  // requires gcd(b, N) = 1
  UnityRoot evaluate_class(const GroupElem& g) const;
  mpz_class order() const;

  DirichletCharacter product_with(const DirichletCharacter& o) const;
  DirichletCharacter inverse() const;
  DirichletCharacter power(const mpz_class& k) const;

  /// P-th component: the character of (F_q[T]/P^a)^* obtained by CRT
  /// projection.  P must divide N.
  DirichletCharacter component(const Poly& p) const;
  /// chi / chi_P as a character mod N/P^a (trivial modulus allowed).
  DirichletCharacter prime_to_part(const Poly& p) const;

  /// Smallest f | N with chi defined mod f.
  FactoredPoly conductor() const;
  /// Exponent of P in the conductor.
  int conductor_exponent(const Poly& p) const;

  /// Reinterpret mod M, where M must be divisible by the conductor and
  /// divide N (checked).
  DirichletCharacter reduce_to(const ResidueUnitGroupPtr& smaller) const;
  /// Inflate to a multiple modulus.
  DirichletCharacter inflate_to(const ResidueUnitGroupPtr& bigger) const;

  /// Value at a constant.
  UnityRoot at_constant(FqElem lambda) const;
  /// Index of chi(beta) in Z/(q-1) for the canonical primitive root beta;
  /// the restriction to F_q^* is the character lambda^j -> zeta^(j * this).
  std::int64_t restriction_index() const;

  bool operator==(const DirichletCharacter& o) const;

 private:
  ResidueUnitGroupPtr G_;
  GroupElem c_;
};

/// A group of Dirichlet characters mod N, stored as a canonical subgroup of
/// the dual in self-dual coordinates.
class CharacterGroup {
 public:
  CharacterGroup() = default;
  CharacterGroup(ResidueUnitGroupPtr structure, Subgroup sub);
  static CharacterGroup trivial(ResidueUnitGroupPtr structure);
  static CharacterGroup full_dual(ResidueUnitGroupPtr structure);
  static CharacterGroup generated_by(const std::vector<DirichletCharacter>& gens);

  const ResidueUnitGroupPtr& structure() const { return G_; }
  const Subgroup& subgroup() const { return sub_; }
  mpz_class order() const { return sub_.order(); }
  bool contains(const DirichletCharacter& chi) const;
  bool contains_group(const CharacterGroup& o) const;
  CharacterGroup product_with(const CharacterGroup& o) const;  // subgroup sum
  bool operator==(const CharacterGroup& o) const;

  std::vector<DirichletCharacter> generators() const;
  std::vector<DirichletCharacter> elements(unsigned long limit = 1u << 16) const;

  /// X_P = { chi_P : chi in X } as a character group mod P^a.
  CharacterGroup p_component_group(const Poly& p) const;
  /// Matrix of the component hom in dual coordinates (local rank x rank).
  Mat component_matrix(const Poly& p) const;

  /// Image of the restriction-to-constants hom in Z/(q-1) (dual side);
  /// its order is e_infinity of the associated field.
  Subgroup restriction_group() const;
  mpz_class restriction_order() const;
  /// Row matrix of the restriction hom.
  Mat restriction_matrix() const;

  /// Product over P of P^(max conductor exponent over the group).
  FactoredPoly conductor() const;

 private:
  ResidueUnitGroupPtr G_;
  Subgroup sub_;
};

}  // namespace fqgenus

#endif  // FQGENUS_CHARACTERS_HPP
