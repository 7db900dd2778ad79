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

#include "fqgenus/signs.hpp"

#include <set>

namespace fqgenus {

namespace {

// Truncated one-unit series arithmetic; vectors hold c_1, c_2, ... of
// 1 + sum c_i pi^i.
std::vector<FqElem> series_mul(const FqFieldPtr& F, const std::vector<FqElem>& a,
                               const std::vector<FqElem>& b, unsigned precision) {
  std::vector<FqElem> c(precision, F->zero());
  for (unsigned i = 1; i <= precision; ++i) {
    FqElem x = F->zero();
    if (i <= a.size()) x = F->add(x, a[i - 1]);
    if (i <= b.size()) x = F->add(x, b[i - 1]);
    for (unsigned j = 1; j < i; ++j)
      if (j <= a.size() && (i - j) <= b.size()) x = F->add(x, F->mul(a[j - 1], b[i - j - 1]));
    c[i - 1] = x;
  }
  return c;
}

std::vector<FqElem> series_inv(const FqFieldPtr& F, const std::vector<FqElem>& a,
                               unsigned precision) {
  // (1 + A)(1 + B) = 1: solve for B coefficient by coefficient.
  std::vector<FqElem> b(precision, F->zero());
  for (unsigned i = 1; i <= precision; ++i) {
    FqElem x = F->zero();
    if (i <= a.size()) x = F->add(x, a[i - 1]);
    for (unsigned j = 1; j < i; ++j)
      if ((i - j) <= a.size()) x = F->add(x, F->mul(b[j - 1], a[i - j - 1]));
    b[i - 1] = F->neg(x);
  }
  return b;
}

// One-unit part of a nonzero polynomial at infinity: f = sgn * T^d * (1 + ...).
std::vector<FqElem> poly_one_unit(const Poly& f, unsigned precision) {
  const auto& F = f.field();
  FqElem inv_lead = F->inv(f.sgn());
  std::vector<FqElem> c(precision, F->zero());
  for (unsigned i = 1; i <= precision; ++i) {
    int idx = f.degree() - static_cast<int>(i);
    c[i - 1] = idx >= 0 ? F->mul(f.coeff(idx), inv_lead) : F->zero();
  }
  return c;
}

}  // namespace

InfinityLocalElem InfinityLocalElem::from_rational(const RationalFn& x, unsigned precision) {
  if (x.is_zero()) throw value_error("zero has no decomposition at infinity");
  const auto& F = x.num.field();
  InfinityLocalElem out;
  out.field = F;
  out.valuation = x.v_infty();
  out.sign = x.sign_at_infinity();
  auto un = poly_one_unit(x.num, precision);
  auto ud = poly_one_unit(x.den, precision);
  out.one_unit = series_mul(F, un, series_inv(F, ud, precision), precision);
  return out;
}

FqElem sign_infty(const RationalFn& x) {
  if (x.is_zero()) throw value_error("sign of zero");
  return x.sign_at_infinity();
}

FqElem sign_infty(const InfinityLocalElem& x) {
  if (x.field->is_zero(x.sign)) throw value_error("sign of zero");
  return x.sign;
}

bool is_totally_positive(const RationalFn& x) { return sign_infty(x).v == 1; }

FqElem sign_local_kummer(const LocalKummerAmbient& amb, const LocalKummerElem& x) {
  const auto& F = amb.field;
  if (F->is_zero(x.xi)) throw value_error("sign of zero");
  FqElem base = F->mul(F->pow(F->minus_one(), amb.ell - 1), amb.delta);
  return F->mul(F->pow(base, x.pi_exponent), F->pow(x.xi, amb.ell));
}

int min_positive_degree(const LocalKummerAmbient& amb) {
  const auto& F = amb.field;
  for (int m = 1; m <= amb.ell; ++m) {
    for (std::uint64_t xi = 1; xi < F->q(); ++xi) {
      LocalKummerElem x{m, F->elem(xi), {}};
      if (sign_local_kummer(amb, x) == F->one()) return m;
    }
  }
  throw invariant_error("no totally positive element found up to degree ell");
}

InfinityLocalElem norm_to_base(const LocalKummerAmbient& amb, const LocalKummerElem& x) {
  const auto& F = amb.field;
  InfinityLocalElem out;
  out.field = F;
  out.valuation = static_cast<int>(x.pi_exponent);
  FqElem base = F->mul(F->pow(F->minus_one(), amb.ell - 1), amb.delta);
  out.sign = F->mul(F->pow(base, x.pi_exponent), F->pow(x.xi, amb.ell));
  // the one-unit w' of the norm is not needed for any sign computation
  out.one_unit.clear();
  return out;
}

bool norm_sign_compat(const LocalKummerAmbient& amb, const LocalKummerElem& x) {
  return sign_local_kummer(amb, x) == sign_infty(norm_to_base(amb, x));
}

mpz_class sig_size(const FqFieldPtr& field, const std::vector<std::int64_t>& image_orders) {
  mpz_class q1 = static_cast<unsigned long>(field->q() - 1);
  if (q1 == 0) q1 = 1;
  mpz_class prod = 1;
  for (auto o : image_orders) {
    if (o < 1 || q1 % static_cast<unsigned long>(o) != 0)
      throw invariant_error("sign image order does not divide q - 1");
    prod *= static_cast<unsigned long>(o);
  }
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), q1.get_mpz_t(), image_orders.size());
  check_invariant(bound % prod == 0, "Sig size does not divide (q-1)^#places");
  return prod;
}

std::int64_t local_kummer_image_order(const LocalKummerAmbient& amb) {
  const auto& F = amb.field;
  std::set<std::uint32_t> values;
  for (int m = 0; m < amb.ell * static_cast<int>(F->q() - 1); ++m)
    for (std::uint64_t xi = 1; xi < F->q(); ++xi)
      values.insert(sign_local_kummer(amb, LocalKummerElem{m, F->elem(xi), {}}).v);
  return static_cast<std::int64_t>(values.size());
}

}  // namespace fqgenus
