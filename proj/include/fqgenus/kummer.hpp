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

#ifndef FQGENUS_KUMMER_HPP
#define FQGENUS_KUMMER_HPP

#include <optional>
#include <variant>

#include "fqgenus/cyclofield.hpp"

namespace fqgenus {

/// K = k(m-th root of gamma * D) with m | q - 1 (m = l or l^2, l prime),
/// gamma in F_q^*, D monic.
struct KummerExtension {
  FqFieldPtr field;
  int m = 2;
  FqElem gamma{1};
  FactoredPoly radicand;  // D, monic part

  static KummerExtension make(const FqFieldPtr& f, int m, FqElem gamma, const Poly& d);

  int degree_d() const { return radicand.degree(); }
  /// epsilon = (-1)^deg(D) * gamma; its class drives the constants layer.
  FqElem epsilon() const;
  /// Class index of epsilon in F_q^*/(F_q^*)^m.
  std::int64_t epsilon_class() const;
  /// [F_q(m-th root of epsilon) : F_q] = order of the class of epsilon.
  int constants_degree_of_radical() const;
};

/// (A/Q)_m as an index in Z/m: mu_index(A^((q^deg Q - 1)/m) mod Q).
std::int64_t residue_symbol(const Poly& a, const Poly& q, int m);
std::int64_t residue_symbol(const RationalFn& a, const Poly& q, int m);

/// A radicand in factored form: unit * prod P_i^{e_i}, e_i in Z.
struct FactoredRadicand {
  FqFieldPtr field;
  FqElem unit{1};
  std::vector<std::pair<Poly, int>> powers;  // monic irreducible, exponent

  static FactoredRadicand from_poly(const Poly& a);
  static FactoredRadicand from_rational(const RationalFn& a);
  static FactoredRadicand from_kummer(const KummerExtension& k);            // gamma * D
  static FactoredRadicand star_form(const KummerExtension& k);              // D^*
  std::int64_t symbol_at(const Poly& q, int m) const;
  RationalFn value() const;
};

/// The Dirichlet character mod N = prod (ramified P) realizing
/// evaluate(chi, Q) = (A/Q)_m for all monic irreducible Q coprime to N,
/// constructed by Frobenius interpolation and re-verified on 20 fresh
/// irreducibles.  Throws value_error("...not cyclotomic...") when no such
/// character exists (the radical is not of star form).
DirichletCharacter kummer_character(const FactoredRadicand& a, int m);

struct InfinityData {
  mpz_class e = 1;
  mpz_class f = 1;
  /// Normalized local radical K_inf = k_inf(m-th root of delta * pi^r),
  /// available exactly when infinity is totally ramified (gcd(m, deg D) = 1).
  std::optional<std::pair<FqElem, int>> uniformizer;  // (delta, reduced exponent r)
};
InfinityData infinity_data(const KummerExtension& k);

/// E = KM cap Lambda_N = k(m-th root of D^*) and the constants degree of
/// EK/K.
struct AssociatedCyclotomic {
  CyclotomicField e;
  int constants_degree = 1;  // [EK : K]
};
AssociatedCyclotomic associated_cyclotomic(const KummerExtension& k);

/// Decomposition group of the infinite primes of K in EK/K, transported to
/// Gal(E/k): the unique subgroup of the required order inside the (cyclic)
/// inertia image of infinity.
Subgroup decomposition_H(const KummerExtension& k, const CyclotomicField& e);

/// Fields that live in the compositum Lambda_N * k_m: a subgroup of the
/// dual of G_N x Z/m.  Cyclotomic parts carry constants component 0; the
/// radical K contributes (chi_{D^*}, t_epsilon).
class CompositeField {
 public:
  CompositeField() = default;
  CompositeField(ResidueUnitGroupPtr structure, int constants_level, Subgroup w);

  static AbGroup extended_group(const ResidueUnitGroup& g, int constants_level);
  static CompositeField from_cyclotomic(const CyclotomicField& e, int constants_level);
  /// W generated by a cyclotomic part plus extra extended characters.
  static CompositeField generated(const CyclotomicField& e, int constants_level,
                                  const std::vector<GroupElem>& extra);

  const Subgroup& subgroup() const { return w_; }
  const ResidueUnitGroupPtr& structure() const { return g_; }
  int constants_level() const { return level_; }
  mpz_class degree() const { return w_.order(); }
  /// Degree of the constant-field subextension: |W cap (0 + Z/level)|.
  mpz_class constants_degree() const;
  /// e_P over k from the extended inertia image.
  mpz_class e_at(const Poly& p) const;
  mpz_class e_infinity() const;
  /// Order of the full infinity decomposition over k (inertia + Frobenius).
  mpz_class d_infinity() const;
  /// Order of the infinity decomposition over the subfield cut out by psi
  /// (psi must lie in W).
  mpz_class d_infinity_over(const GroupElem& psi) const;
  bool same_ambient(const CompositeField& o) const;
  bool operator==(const CompositeField& o) const;
  bool contains(const CompositeField& o) const;

 private:
  ResidueUnitGroupPtr g_;
  int level_ = 1;
  Subgroup w_;
  Subgroup inertia_infinity_ext() const;
  Subgroup decomposition_infinity_ext() const;
};

enum class ExactnessRule {
  kHTrivial,                 // H = 1: geK = geE * K
  kBoundsCoincide,           // ge(gE^H) = geE
  kSingleRamifiedConstants,  // prime-degree radical, l not dividing deg D, f_inf(K/k) = 1
  kIntervalOnly,
};
const char* exactness_rule_name(ExactnessRule r);

struct AbstractGenusInput {
  CyclotomicField e;
  Subgroup h;  // subgroup of e.galois_group().group
  bool ek_constants = true;
};

using AbelianGenusInput = std::variant<KummerExtension, CyclotomicField, AbstractGenusInput>;

struct GenusResult {
  // associated data
  CyclotomicField e;            // E = KM cap Lambda_N
  mpz_class h_order = 1;
  CyclotomicField e_sub_h;      // E^H
  CyclotomicField genus_e;      // gE
  CyclotomicField extended_genus_e;  // geE
  CyclotomicField gk_cyclotomic;     // (gE)^H: the cyclotomic part of gK
  CyclotomicField lower;        // ge((gE)^H)
  CyclotomicField upper;        // geE

  bool with_radical = false;    // gK/geK carry the radical factor K
  bool exact = false;
  ExactnessRule rule = ExactnessRule::kIntervalOnly;
  CyclotomicField ge_cyclotomic;  // D with geK = D*K, when exact

  // extended descriptors (Kummer input only)
  std::optional<CompositeField> k_composite;     // K itself
  std::optional<CompositeField> gk_composite;    // gK = (gE)^H * K
  std::optional<CompositeField> gek_composite;   // geK = D * K (exact)
  std::optional<CompositeField> lower_composite; // lower * K
  std::optional<CompositeField> upper_composite; // upper * K

  // constants degrees (-1 when not computable, e.g. abstract mode)
  std::int64_t constants_degree_gk = -1;
  std::int64_t constants_degree_gek = -1;

  std::optional<KummerExtension> input_kummer;
  std::optional<InfinityData> at_infinity;
  int ek_constants_degree = 1;
};

GenusResult genus_pipeline(const AbelianGenusInput& input);

/// The Q_i = P_i * P_1^{z_i} recipe with a deg P_1 + b l^2 = 1 and
/// z_i = -a deg P_i; gives the radical generators of gE in the l^2 shape.
struct RadicalGenerator {
  int root_exponent;
  RationalFn radicand;
};
struct QRecipe {
  long a = 0, b = 0;
  std::vector<long> z;                       // z_i for i >= 2 (paper indexing)
  std::vector<RationalFn> q_functions;       // Q_i for i >= 2
  std::vector<RadicalGenerator> genus_generators;  // radical form of gE
};
QRecipe q_coefficients(const KummerExtension& k);

/// Character group generated by kummer characters of radical generators,
/// inflated to the given modulus.
CyclotomicField field_of_radicals(const std::vector<RadicalGenerator>& gens,
                                  const Poly& modulus);

}  // namespace fqgenus

#endif  // FQGENUS_KUMMER_HPP
