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

#ifndef FQGENUS_UNITS_HPP
#define FQGENUS_UNITS_HPP

#include <memory>
#include <vector>

#include "fqgenus/abelian.hpp"
#include "fqgenus/poly.hpp"

namespace fqgenus {

class ResidueUnitGroup;
using ResidueUnitGroupPtr = std::shared_ptr<const ResidueUnitGroup>;

/// Structured presentation of G_N = (F_q[T]/N)^*.
///
/// Per prime power P^a the local group is the direct product of the cyclic
/// residue-field part (generated by a Teichmuller lift of a primitive root
/// of F_q[T]/P) and the one-unit part 1 + P R/P^a, presented by generators
/// 1 + c P^j with exact p-power relations.  The global group glues the CRT
/// factors through one Smith normal form.
class ResidueUnitGroup : public std::enable_shared_from_this<ResidueUnitGroup> {
 public:
  /// Builds the structure.  deg N >= 1.  Cyclic residue factors beyond
  /// 2^24 are rejected (BSGS bound).
  static ResidueUnitGroupPtr make(const FactoredPoly& n);
  static ResidueUnitGroupPtr make(const Poly& n);
  /// Memoized variant keyed on the modulus.
  static ResidueUnitGroupPtr shared(const Poly& n);

  const FqFieldPtr& field() const { return F_; }
  const FactoredPoly& modulus() const { return N_; }
  const Poly& modulus_poly() const { return Npoly_; }

  /// Invariant-factor form of G_N.
  const AbGroup& group() const { return pres_.group; }
  mpz_class order() const { return pres_.group.order(); }

  /// Discrete logarithm of a unit; requires gcd(u, N) = 1.
  GroupElem encode(const Poly& u) const;
  /// Canonical polynomial representative, deg < deg N.
  Poly decode(const GroupElem& g) const;

  size_t factor_count() const { return locals_.size(); }
  const Poly& prime(size_t i) const { return locals_[i].prime; }
  int alpha(size_t i) const { return locals_[i].alpha; }
  /// Index of the factor whose prime equals P (throws if P does not divide N).
  size_t factor_index(const Poly& p) const;

  /// Unit group of the local factor P^a (same presentation as a standalone
  /// ResidueUnitGroup over that modulus).
  ResidueUnitGroupPtr local_group(size_t i) const;

  /// Projection of g onto the P-th CRT factor, as an element of
  /// local_group(factor_index(P)).
  GroupElem crt_component(const GroupElem& g, const Poly& p) const;

  /// Subgroup generated by the constants F_q^*; the inertia image of the
  /// infinite prime in the full cyclotomic extension.
  const Subgroup& fq_star_image() const { return fq_image_; }
  /// Encoding of a constant.
  GroupElem encode_constant(FqElem c) const;

  /// Generator polynomials of the invariant-factor basis: generators()[i]
  /// has order group().mods()[i] and the products generate.
  std::vector<Poly> invariant_generators() const;

  /// The i-th CRT factor as a subgroup of the global group; this is the
  /// inertia image of the prime at that factor in the full cyclotomic field.
  Subgroup local_factor_subgroup(size_t i) const;

 private:
  struct LocalFactor {
    Poly prime;
    int alpha = 1;
    Poly prime_power;
    int res_degree = 1;
    std::uint64_t res_order = 1;       // q^d - 1
    Poly beta_res;                     // primitive root of the residue field
    std::vector<Poly> gens;            // teichmuller (if nontrivial), then one-unit gens
    std::vector<Poly> gens_inv;
    bool has_cyclic = false;
    Mat relations;
    // BSGS for the residue field
    std::uint64_t bsgs_m = 0;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> baby;
    Poly giant;
  };

  static LocalFactor build_local(const FqFieldPtr& F, const Poly& p, int alpha);
  static std::vector<mpz_class> one_unit_descent(const LocalFactor& lf, Poly v);
  std::uint64_t res_dlog(const LocalFactor& lf, const Poly& u) const;

  FqFieldPtr F_;
  FactoredPoly N_;
  Poly Npoly_;
  std::vector<LocalFactor> locals_;
  std::vector<size_t> gen_offset_;
  std::vector<Poly> global_gens_;
  GroupPresentation pres_;
  std::vector<GroupPresentation> local_pres_;
  Subgroup fq_image_;
};

/// Class of the monic irreducible Q in (F_q[T]/N')^*; requires gcd(Q, N') = 1.
GroupElem frobenius_class(const ResidueUnitGroup& g, const Poly& q);

}  // namespace fqgenus

#endif  // FQGENUS_UNITS_HPP
