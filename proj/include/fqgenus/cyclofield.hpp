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

#ifndef FQGENUS_CYCLOFIELD_HPP
#define FQGENUS_CYCLOFIELD_HPP

#include <string>

#include "fqgenus/characters.hpp"

namespace fqgenus {

struct PrimeRamification {
  Poly prime;
  mpz_class e, f, g;
};

struct RamificationReport {
  std::vector<PrimeRamification> finite;  // one entry per prime of the modulus
  mpz_class e_infinity = 1;
  mpz_class f_infinity = 1;  // always 1 for cyclotomic subfields
  mpz_class g_infinity = 1;
  mpz_class degree = 1;
  int constant_degree = 1;  // always 1 for cyclotomic subfields
};

/// A subfield E of the N-th cyclotomic function field, represented by its
/// group of Dirichlet characters.  Two descriptors denote the same field
/// exactly when their groups agree after conductor reduction.
class CyclotomicField {
 public:
  CyclotomicField() = default;
  explicit CyclotomicField(CharacterGroup x) : X_(std::move(x)) {}
  /// The base field k itself (trivial character group).
  static CyclotomicField rationals(const FqFieldPtr& f);

  const CharacterGroup& characters() const { return X_; }
  const ResidueUnitGroupPtr& structure() const { return X_.structure(); }
  mpz_class degree() const { return X_.order(); }
  bool is_rational() const { return X_.order() == 1; }

  RamificationReport ramification() const;
  /// e and f of the unramified prime Q (coprime to the modulus):
  /// e = 1, f = order of the Frobenius class of Q against the characters.
  std::pair<mpz_class, mpz_class> unramified_prime_data(const Poly& q) const;

  /// Theorem machinery: the field of Y = prod_P X_P, the maximal extension
  /// unramified at the finite primes inside a cyclotomic field.
  CyclotomicField extended_genus() const;
  /// Fixed field of the infinity-decomposition inside extended_genus()/E:
  /// characters of Y whose restriction to the constants lies in the
  /// restriction group of X.
  CyclotomicField genus() const;

  /// Gal(E/k) as a quotient of the unit group, with projection maps.
  QuotientStructure galois_group() const;
  /// Fixed field under a subgroup of galois_group().group.
  CyclotomicField fixed_field(const Subgroup& s) const;
  /// Image of the infinity inertia (the constants) in galois_group().
  Subgroup infinity_inertia_image() const;

  static CyclotomicField compositum(const CyclotomicField& a, const CyclotomicField& b);
  static CyclotomicField intersection(const CyclotomicField& a, const CyclotomicField& b);
  static bool is_subfield(const CyclotomicField& a, const CyclotomicField& b);

  /// Canonical descriptor: characters reduced to the group conductor.
  CyclotomicField reduced_to_conductor() const;
  CyclotomicField inflated_to(const Poly& modulus) const;
  bool same_field(const CyclotomicField& o) const;
  std::string canonical_key() const;

 private:
  CharacterGroup X_;
};

}  // namespace fqgenus

#endif  // FQGENUS_CYCLOFIELD_HPP
