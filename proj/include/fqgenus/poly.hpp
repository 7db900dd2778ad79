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

#ifndef FQGENUS_POLY_HPP
#define FQGENUS_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqgenus/fq.hpp"

namespace fqgenus {

/// Element of F_q[T].  Coefficients are stored ascending with no trailing
/// zeros; the zero polynomial has an empty coefficient vector and degree -1
/// (the distinguished "minus infinity" marker).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FqFieldPtr field) : F_(std::move(field)) {}
  Poly(FqFieldPtr field, std::vector<FqElem> coeffs);

  static Poly zero(FqFieldPtr F) { return Poly(std::move(F)); }
  static Poly one(FqFieldPtr F);
  static Poly constant(FqFieldPtr F, FqElem c);
  static Poly variable(FqFieldPtr F);  // the polynomial T

  /// Packed-index codec used for deterministic enumeration: the index is
  /// Sum coeff_i.index * q^i over i < width.
  static Poly from_index(FqFieldPtr F, std::uint64_t index, unsigned width);
  std::uint64_t to_index(unsigned width) const;

  const FqFieldPtr& field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().v == 1; }
  FqElem coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? FqElem{0} : c_[static_cast<size_t>(i)];
  }
  const std::vector<FqElem>& coeffs() const { return c_; }

  /// Leading coefficient; this is the paper's sgn for nonzero polynomials.
  FqElem sgn() const;
  /// (-1)^deg * this; the star twist making Kummer radicals cyclotomic.
  Poly star_twist() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(FqElem c) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::pair<Poly, Poly> divmod(const Poly& d) const;  // (quotient, remainder)
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  Poly monic() const;  // divide by leading coefficient
  Poly derivative() const;
  FqElem eval(FqElem x) const;

  /// Canonical total order: degree first, then coefficients from the top.
  static int compare(const Poly& a, const Poly& b);
  bool operator<(const Poly& o) const { return compare(*this, o) < 0; }

  std::string format() const;
  static Poly parse(const FqFieldPtr& F, const std::string& text);

 private:
  FqFieldPtr F_;
  std::vector<FqElem> c_;
  void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic (or zero)
/// Returns (g, u, v) with u*a + v*b = g, g monic (or zero).
std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b);

Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& mod);
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod);

/// Complete factorization N = unit * prod factors[i].first ^ factors[i].second
/// with monic irreducible, pairwise distinct factors in canonical order.
struct FactoredPoly {
  FqElem unit{1};
  std::vector<std::pair<Poly, int>> factors;
  FqFieldPtr field;

  Poly value() const;
  mpz_class euler_phi() const;
  int degree() const;
  bool is_one() const { return factors.empty() && unit.v == 1; }

  /// Factorization with the factor at `prime` removed entirely.
  FactoredPoly without(const Poly& prime) const;
  int exponent_of(const Poly& prime) const;
};

/// Squarefree decomposition + distinct-degree + equal-degree splitting.
/// Deterministic: the equal-degree stage draws from a stream seeded by the
/// input polynomial.
FactoredPoly factorize(const Poly& n);

bool is_irreducible(const Poly& f);

/// All monic irreducibles of degree <= max_degree in canonical order
/// (degree, then packed coefficient index).
class IrreducibleEnum {
 public:
  IrreducibleEnum(FqFieldPtr F, int max_degree);
  /// Next irreducible, or zero polynomial when exhausted.
  Poly next();

 private:
  FqFieldPtr F_;
  int max_degree_;
  int degree_ = 1;
  std::uint64_t index_ = 0;
  std::uint64_t index_end_;
};

/// Reduced rational function: gcd(num, den) = 1, den monic, the unit
/// absorbed into the numerator.
struct RationalFn {
  Poly num;
  Poly den;

  static RationalFn make(const Poly& num, const Poly& den);
  static RationalFn from_poly(const Poly& p);
  bool is_zero() const { return num.is_zero(); }
  /// sgn(num) / sgn(den); den is monic so this is sgn(num).
  FqElem sign_at_infinity() const;
  /// deg den - deg num, the valuation at the infinite place.
  int v_infty() const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn inverse() const;
  bool operator==(const RationalFn& o) const { return num == o.num && den == o.den; }
  std::string format() const;
  static RationalFn parse(const FqFieldPtr& F, const std::string& text);
};

}  // namespace fqgenus

#endif  // FQGENUS_POLY_HPP
