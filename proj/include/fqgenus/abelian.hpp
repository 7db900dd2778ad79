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

#ifndef FQGENUS_ABELIAN_HPP
#define FQGENUS_ABELIAN_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "fqgenus/errors.hpp"

namespace fqgenus {

/// Dense integer matrix over GMP integers, row major.
struct Mat {
  size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;

  Mat() = default;
  Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  static Mat identity(size_t n);

  mpz_class& at(size_t i, size_t j) { return a[i * cols + j]; }
  const mpz_class& at(size_t i, size_t j) const { return a[i * cols + j]; }
  Mat transpose() const;
  bool operator==(const Mat& o) const = default;
};

Mat mat_mul(const Mat& A, const Mat& B);
mpz_class mat_det(Mat A);  // Bareiss, square matrices

/// U * M * V = S with S diagonal, s_i | s_{i+1}, U and V unimodular.
/// Uinv and Vinv are the exact inverses (checked on every call).
struct SnfResult {
  Mat U, Uinv, S, V, Vinv;
};
SnfResult smith_normal_form(const Mat& M);

/// Canonical row-Hermite basis of the full-rank lattice spanned by the rows
/// of M (n x k, n >= k).  Result is k x k, upper triangular, positive
/// pivots, entries above each pivot reduced into [0, pivot).
Mat hermite_rows(Mat M);

/// Column vectors spanning { x : A x = 0 }.
std::vector<std::vector<mpz_class>> kernel_basis(const Mat& A);

/// A particular solution of A x = b, if one exists.
std::optional<std::vector<mpz_class>> solve_linear(const Mat& A, const std::vector<mpz_class>& b);

/// Finite abelian group presented on diagonal moduli (Z/d_1) x ... x (Z/d_k).
/// Canonical presentations (from SNF) have d_i | d_{i+1} and d_i >= 2, but
/// plain products (e.g. CRT factors) are allowed too.
class AbGroup {
 public:
  AbGroup() = default;
  explicit AbGroup(std::vector<mpz_class> mods);

  size_t rank() const { return mods_.size(); }
  const std::vector<mpz_class>& mods() const { return mods_; }
  mpz_class order() const;
  mpz_class exponent() const;
  bool is_invariant_chain() const;
  bool operator==(const AbGroup& o) const { return mods_ == o.mods_; }

  std::vector<mpz_class> reduce(std::vector<mpz_class> e) const;
  std::vector<mpz_class> zero() const { return std::vector<mpz_class>(rank(), 0); }
  std::vector<mpz_class> add(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const;
  std::vector<mpz_class> neg(const std::vector<mpz_class>& a) const;
  std::vector<mpz_class> smul(const mpz_class& n, const std::vector<mpz_class>& a) const;
  bool is_zero(const std::vector<mpz_class>& a) const;
  mpz_class element_order(const std::vector<mpz_class>& e) const;

  /// All elements in mixed-radix order; requires order() <= limit.
  std::vector<std::vector<mpz_class>> all_elements(unsigned long limit = 1u << 20) const;

 private:
  std::vector<mpz_class> mods_;
};

/// Exponent vector of a group element, always reduced mod the ambient moduli.
using GroupElem = std::vector<mpz_class>;

/// Subgroup of an AbGroup in canonical form: the row-Hermite basis of the
/// preimage lattice in Z^k (always containing the ambient diagonal), so
/// equality of subgroups is equality of matrices.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup from_generators(const AbGroup& G, const std::vector<GroupElem>& gens);
  static Subgroup from_lattice_rows(const AbGroup& G, const Mat& rows);
  static Subgroup trivial(const AbGroup& G);
  static Subgroup full(const AbGroup& G);

  const AbGroup& ambient() const { return G_; }
  const Mat& basis() const { return H_; }
  mpz_class order() const;
  bool contains(const GroupElem& g) const;
  bool operator==(const Subgroup& o) const { return H_ == o.H_; }
  bool contains_subgroup(const Subgroup& o) const;
  Subgroup sum(const Subgroup& o) const;
  Subgroup intersect(const Subgroup& o) const;

  /// Generators of the subgroup (basis rows reduced into the group).
  std::vector<GroupElem> generators() const;
  /// Every element; requires order() small.
  std::vector<GroupElem> elements(unsigned long limit = 1u << 20) const;

 private:
  AbGroup G_;
  Mat H_;  // k x k canonical
};

/// Ann(S) = { c : sum_i c_i e_i / d_i = 0 mod 1 for all e in S }, in the
/// self-dual coordinates of the ambient group.
Subgroup annihilator(const Subgroup& S);

struct QuotientStructure {
  AbGroup group;   // invariant factors, trivial components dropped
  Mat projection;  // ambient coords -> quotient coords (reduce mod group)
  Mat lift;        // quotient basis vector -> ambient coset representative
};
QuotientStructure quotient_structure(const AbGroup& G, const Subgroup& S);

struct GroupPresentation {
  AbGroup group;
  Mat to_invariant;    // generator exponent column -> invariant coordinates
  Mat from_invariant;  // invariant basis vector -> generator exponents
};
/// Structure of the quotient Z^n_gens / (row lattice of relations).
/// Throws value_error if the quotient is infinite.
GroupPresentation group_from_relations(size_t n_gens, const Mat& relation_rows);

/// Image of S under the homomorphism x -> M x into H.
Subgroup hom_image(const Mat& M, const AbGroup& H, const Subgroup& S);
/// Preimage of T under the homomorphism x -> M x from G.
Subgroup hom_preimage(const Mat& M, const AbGroup& G, const Subgroup& T);

/// Apply x -> M x and reduce in H.
GroupElem hom_apply(const Mat& M, const AbGroup& H, const GroupElem& x);

}  // namespace fqgenus

#endif  // FQGENUS_ABELIAN_HPP
