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

#ifndef FQGENUS_FQ_HPP
#define FQGENUS_FQ_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fqgenus/errors.hpp"

namespace fqgenus {

/// Element of F_q, stored as a packed index: the base-p digits of the
/// index are the coordinates in the F_p-basis 1, g, g^2, ..., g^{s-1}.
/// For prime fields the index is just the residue.
struct FqElem {
  std::uint32_t v = 0;
  friend bool operator==(const FqElem&, const FqElem&) = default;
  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// The finite field F_q, q = p^s.  Immutable after construction; share
/// freely.  Nonprime fields are F_p[g]/(modulus) for a monic irreducible
/// modulus of degree s, chosen deterministically unless supplied.
class FqField {
 public:
  /// Prime field, or extension field with the built-in deterministic
  /// modulus (smallest monic irreducible of degree s in index order).
  static std::shared_ptr<const FqField> make(std::uint64_t p, unsigned s = 1);

  /// Extension field with an explicit monic irreducible modulus over F_p.
  /// modulus[i] is the coefficient of g^i; modulus.size() == s + 1.
  static std::shared_ptr<const FqField> make(std::uint64_t p, unsigned s,
                                             const std::vector<std::uint32_t>& modulus);

  std::uint64_t p() const { return p_; }
  unsigned s() const { return s_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FqElem zero() const { return FqElem{0}; }
  FqElem one() const { return FqElem{1}; }
  bool is_zero(FqElem a) const { return a.v == 0; }

  /// Constant embedding: n mod p as an element of the prime subfield.
  FqElem from_int(std::int64_t n) const;
  /// Element with the given packed index (bounds-checked).
  FqElem elem(std::uint64_t index) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;  // throws value_error on zero
  FqElem minus_one() const { return neg(one()); }

  /// a^e with square-and-multiply; negative e allowed for nonzero a.
  FqElem pow(FqElem a, std::int64_t e) const;

  /// Smallest element (in index order) of multiplicative order q - 1.
  FqElem primitive_root() const;

  /// Discrete log base primitive_root(); requires x != 0.
  std::int64_t dlog(FqElem x) const;

  /// Class of x in F_q^* / (F_q^*)^l as an exponent t in Z/l:
  /// x = beta^(t + l Z) times an l-th power.  Requires l | q - 1, x != 0.
  std::int64_t lth_power_class(FqElem x, std::int64_t l) const;

  /// Index j with z = zeta^j where zeta = beta^((q-1)/l) generates mu_l.
  /// Requires z^l = 1 and l | q - 1.
  std::int64_t mu_index(FqElem z, std::int64_t l) const;

  std::int64_t multiplicative_order(FqElem a) const;

  /// Order of the class of x in F_q^* / (F_q^*)^l.
  std::int64_t order_mod_lth_powers(FqElem x, std::int64_t l) const;

  /// Field literal grammar.  Prime fields: decimal integers.  Nonprime
  /// fields: polynomials in "g", e.g. "g^3+2" or "2*g^2+g+1".
  FqElem parse(const std::string& text) const;
  std::string format(FqElem a) const;

  bool same_field(const FqField& other) const {
    return p_ == other.p_ && s_ == other.s_ && modulus_ == other.modulus_;
  }

  /// Prime factors of q - 1, ascending, without multiplicity.
  const std::vector<std::uint64_t>& q1_prime_factors() const { return q1_primes_; }

 private:
  FqField() = default;
  void init_tables();

  std::uint64_t p_ = 0;
  unsigned s_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;  // degree s, monic, over F_p (empty for s == 1)

  // Small fields get dense tables; larger ones fall back to digit
  // arithmetic plus BSGS for logs.
  bool tables_ = false;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<std::uint32_t> log_table_;   // index -> dlog (tables_ only)
  std::vector<std::uint32_t> exp_table_;   // dlog -> index (tables_ only)
  std::uint32_t beta_ = 0;                 // primitive root index
  std::vector<std::uint64_t> q1_primes_;

  // BSGS data for dlog when no dense tables.
  std::uint64_t bsgs_m_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bsgs_baby_;  // sorted (elem, j)
  std::uint32_t bsgs_giant_ = 0;  // beta^{-m}

  std::vector<std::uint32_t> unpack(FqElem a) const;
  FqElem pack(const std::vector<std::uint32_t>& digits) const;
  FqElem mul_slow(FqElem a, FqElem b) const;
};

using FqFieldPtr = std::shared_ptr<const FqField>;

}  // namespace fqgenus

#endif  // FQGENUS_FQ_HPP
