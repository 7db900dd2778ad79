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

#ifndef FQGENUS_SIGNS_HPP
#define FQGENUS_SIGNS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fqgenus/poly.hpp"

namespace fqgenus {

/// Element of k_infinity = F_q((1/T)) decomposed as pi^n * lambda * epsilon
/// with lambda in F_q^* and epsilon a one-unit, truncated to a configurable
/// number of terms.  Signs depend only on (n, lambda), so truncation never
/// corrupts a sign.
struct InfinityLocalElem {
  int valuation = 0;                // n_x (power of pi = 1/T)
  FqElem sign{1};                   // lambda_x
  std::vector<FqElem> one_unit;     // epsilon = 1 + sum c_i pi^i, c_1.. stored
  FqFieldPtr field;

  static InfinityLocalElem from_rational(const RationalFn& x, unsigned precision = 16);
};

/// phi_infinity: the sign (leading Laurent coefficient at infinity).
FqElem sign_infty(const RationalFn& x);
FqElem sign_infty(const InfinityLocalElem& x);

/// Totally positive over k (single infinite place): sign 1.
bool is_totally_positive(const RationalFn& x);

/// The local Kummer field K_inf = k_inf(ell-th root of delta/T) of the
/// prime-degree radical shape; Pi^ell = delta * pi.
struct LocalKummerAmbient {
  FqFieldPtr field;
  int ell = 2;        // prime, ell | q - 1
  FqElem delta{1};    // delta in F_q^*
};

/// x = Pi^m * xi * w with xi in F_q^* and w a one-unit (truncated).
struct LocalKummerElem {
  std::int64_t pi_exponent = 0;  // m
  FqElem xi{1};
  std::vector<FqElem> one_unit;  // coefficients of w - 1
};

/// phi_{K_inf}(x) = ((-1)^(ell-1) delta)^m * xi^ell.
FqElem sign_local_kummer(const LocalKummerAmbient& amb, const LocalKummerElem& x);

/// Smallest m >= 1 such that some (m, xi) is totally positive; equals the
/// constant-field degree of the extended Hilbert class field in the
/// prime-radical pattern.
int min_positive_degree(const LocalKummerAmbient& amb);

/// Norm of x to k_infinity by the closed form
/// N(x) = ((-1)^(ell-1) delta pi)^m xi^ell w', as a local element.
InfinityLocalElem norm_to_base(const LocalKummerAmbient& amb, const LocalKummerElem& x);

/// Checks phi_{K_inf}(x) == phi_inf(N(x)) for this input.
bool norm_sign_compat(const LocalKummerAmbient& amb, const LocalKummerElem& x);

/// Size of Sig_L from per-place image orders; asserts each order divides
/// q - 1 and the product divides (q-1)^#places.
mpz_class sig_size(const FqFieldPtr& field, const std::vector<std::int64_t>& image_orders);

/// Order of the image group phi_{K_inf}(K_inf^*) in F_q^*, computed by
/// enumerating the values of the sign formula.
std::int64_t local_kummer_image_order(const LocalKummerAmbient& amb);

}  // namespace fqgenus

#endif  // FQGENUS_SIGNS_HPP
