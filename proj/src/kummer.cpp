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

#include "fqgenus/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace fqgenus {

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// m must be l or l^2 for a prime l; returns l.
int radical_prime(int m) {
  if (is_prime_int(m)) return m;
  int r = static_cast<int>(std::lround(std::sqrt(double(m))));
  for (int l = r - 1; l <= r + 1; ++l)
    if (l >= 2 && l * l == m && is_prime_int(l)) return l;
  throw unsupported_error("radical exponent must be l or l^2 for a prime l, got " +
                          std::to_string(m));
}

}  // namespace

KummerExtension KummerExtension::make(const FqFieldPtr& f, int m, FqElem gamma, const Poly& d) {
  if (f->is_zero(gamma)) throw value_error("gamma must be nonzero");
  if (d.is_zero() || !d.is_monic()) throw value_error("the radicand polynomial must be monic");
  if (m < 2 || (f->q() - 1) % static_cast<std::uint64_t>(m) != 0)
    throw unsupported_error("radical exponent must satisfy m | q - 1 (violated: m = " +
                            std::to_string(m) + ", q = " + std::to_string(f->q()) + ")");
  radical_prime(m);
  KummerExtension k;
  k.field = f;
  k.m = m;
  k.gamma = gamma;
  k.radicand = factorize(d);
  return k;
}

FqElem KummerExtension::epsilon() const {
  FqElem sign = field->pow(field->minus_one(), degree_d());
  return field->mul(sign, gamma);
}

std::int64_t KummerExtension::epsilon_class() const {
  return field->lth_power_class(epsilon(), m);
}

int KummerExtension::constants_degree_of_radical() const {
  std::int64_t t = epsilon_class();
  return static_cast<int>(m / std::gcd<std::int64_t>(m, t == 0 ? m : t));
}

// ---------------------------------------------------------------------------
// Residue symbols

std::int64_t residue_symbol(const Poly& a, const Poly& q, int m) {
  const auto& F = a.field();
  if ((F->q() - 1) % static_cast<std::uint64_t>(m) != 0)
    throw unsupported_error("residue symbol needs m | q - 1");
  Poly ared = a % q;
  if (!poly_gcd(ared, q).is_one()) throw value_error("residue symbol undefined: Q divides A");
  mpz_class qd = 1;
  for (int i = 0; i < q.degree(); ++i) qd *= static_cast<unsigned long>(F->q());
  mpz_class e = (qd - 1) / m;
  Poly r = poly_powmod(ared, e, q);
  check_invariant(r.is_constant(), "residue symbol power is not a constant");
  return F->mu_index(r.coeff(0), m);
}

std::int64_t residue_symbol(const RationalFn& a, const Poly& q, int m) {
  std::int64_t n = residue_symbol(a.num, q, m);
  std::int64_t d = residue_symbol(a.den, q, m);
  std::int64_t r = (n - d) % m;
  return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------
// Factored radicands

FactoredRadicand FactoredRadicand::from_poly(const Poly& a) {
  if (a.is_zero()) throw value_error("zero radicand");
  auto fac = factorize(a);
  FactoredRadicand out;
  out.field = a.field();
  out.unit = fac.unit;
  for (const auto& [p, e] : fac.factors) out.powers.emplace_back(p, e);
  return out;
}

FactoredRadicand FactoredRadicand::from_rational(const RationalFn& a) {
  if (a.is_zero()) throw value_error("zero radicand");
  auto out = from_poly(a.num);
  auto den = factorize(a.den);
  check_invariant(den.unit == a.den.field()->one(), "denominator is monic");
  for (const auto& [p, e] : den.factors) {
    bool merged = false;
    for (auto& [q, f] : out.powers)
      if (q == p) {
        f -= e;
        merged = true;
        break;
      }
    if (!merged) out.powers.emplace_back(p, -e);
  }
  std::erase_if(out.powers, [](const auto& pe) { return pe.second == 0; });
  std::sort(out.powers.begin(), out.powers.end(),
            [](const auto& x, const auto& y) { return Poly::compare(x.first, y.first) < 0; });
  return out;
}

FactoredRadicand FactoredRadicand::from_kummer(const KummerExtension& k) {
  FactoredRadicand out;
  out.field = k.field;
  out.unit = k.gamma;
  for (const auto& [p, e] : k.radicand.factors) out.powers.emplace_back(p, e);
  return out;
}

FactoredRadicand FactoredRadicand::star_form(const KummerExtension& k) {
  FactoredRadicand out;
  out.field = k.field;
  out.unit = k.field->pow(k.field->minus_one(), k.degree_d());
  for (const auto& [p, e] : k.radicand.factors) out.powers.emplace_back(p, e);
  return out;
}

std::int64_t FactoredRadicand::symbol_at(const Poly& q, int m) const {
  // (unit/Q)_m = class(unit) * deg Q, plus e_i (P_i/Q)_m termwise.
  std::int64_t acc = 0;
  if (!field->is_zero(unit) && field->q() > 2) {
    std::int64_t t = field->lth_power_class(unit, m);
    acc = (t * q.degree()) % m;
  }
  for (const auto& [p, e] : powers) {
    std::int64_t s = residue_symbol(p, q, m);
    acc = (acc + s * (e % m)) % m;
  }
  return acc < 0 ? acc + m : acc;
}

RationalFn FactoredRadicand::value() const {
  Poly num = Poly::constant(field, unit);
  Poly den = Poly::one(field);
  for (const auto& [p, e] : powers) {
    for (int i = 0; i < std::abs(e); ++i) {
      if (e > 0)
        num = num * p;
      else
        den = den * p;
    }
  }
  return RationalFn::make(num, den);
}

// ---------------------------------------------------------------------------
// Frobenius interpolation

DirichletCharacter kummer_character(const FactoredRadicand& a, int m) {
  const auto& F = a.field;
  if (m < 1 || (F->q() - 1) % static_cast<std::uint64_t>(m) != 0)
    throw unsupported_error("kummer_character needs m | q - 1");

  // Conductor support: primes with exponent not divisible by m.
  Poly n = Poly::one(F);
  for (const auto& [p, e] : a.powers)
    if (e % m != 0) n = n * p;

  if (n.is_one()) {
    std::int64_t t = (F->q() > 2 && !F->is_zero(a.unit)) ? F->lth_power_class(a.unit, m) : 0;
    if (t % m != 0)
      throw value_error(
          "radicand is not of cyclotomic star form (constant class " + std::to_string(t) +
          " nonzero mod " + std::to_string(m) + "): field is not cyclotomic");
    auto g = ResidueUnitGroup::shared(Poly::variable(F));
    return {g, g->group().zero()};
  }

  auto g = ResidueUnitGroup::shared(n);
  const AbGroup& dual = g->group();
  const size_t k = dual.rank();
  mpz_class mbar_z = dual.exponent();
  check_invariant(mbar_z.fits_slong_p(), "group exponent too large");
  std::int64_t mbar = mbar_z.get_si();
  check_invariant(mbar % m == 0, "m must divide the exponent of the unit group");

  // Sample monic irreducibles until their classes generate the unit group.
  std::vector<GroupElem> classes;
  std::vector<std::int64_t> targets;
  std::vector<Poly> samples;
  IrreducibleEnum en(F, 64);
  Subgroup span = Subgroup::trivial(dual);
  while (true) {
    Poly q = en.next();
    check_invariant(!q.is_zero(), "ran out of irreducibles while interpolating");
    bool divides_radicand = false;
    for (const auto& [p, e] : a.powers)
      if (p == q) divides_radicand = true;
    if (divides_radicand || (n % q).is_zero()) continue;
    classes.push_back(g->encode(q));
    targets.push_back(a.symbol_at(q, m));
    samples.push_back(q);
    span = span.sum(Subgroup::from_generators(dual, {classes.back()}));
    if (span == Subgroup::full(dual) && classes.size() >= k + 4) break;
  }

  // Solve sum_i c_i (mbar/d_i) g_i = v (mbar/m)  (mod mbar) for c.
  const size_t t = classes.size();
  Mat sys(t, k + t);
  std::vector<mpz_class> rhs(t);
  for (size_t r = 0; r < t; ++r) {
    for (size_t i = 0; i < k; ++i)
      sys.at(r, i) = (mbar_z / dual.mods()[i]) * classes[r][i];
    sys.at(r, k + r) = mbar_z;
    rhs[r] = mpz_class(targets[r]) * (mbar / m);
  }
  auto sol = solve_linear(sys, rhs);
  if (!sol)
    throw value_error("radical is not of cyclotomic star form: no character matches its symbol");
  GroupElem c(k);
  for (size_t i = 0; i < k; ++i) c[i] = (*sol)[i];
  DirichletCharacter chi(g, std::move(c));

  // Re-verify the contract on the samples plus 20 fresh irreducibles.
  size_t fresh = 0;
  IrreducibleEnum verify_en(F, 64);
  size_t checked = 0;
  while (fresh < 20) {
    Poly q = verify_en.next();
    check_invariant(!q.is_zero(), "ran out of irreducibles while verifying");
    bool skip = (n % q).is_zero();
    for (const auto& [p, e] : a.powers)
      if (p == q) skip = true;
    if (skip) continue;
    ++checked;
    if (checked > samples.size()) ++fresh;
    std::int64_t want = a.symbol_at(q, m);
    if (chi.evaluate(q).index_mod(m) != want)
      throw value_error("radical is not of cyclotomic star form: symbol mismatch at Q = " +
                        q.format());
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Infinity data and the associated cyclotomic field

InfinityData infinity_data(const KummerExtension& k) {
  const auto& F = k.field;
  InfinityData out;
  int n = k.degree_d();
  int g = static_cast<int>(std::gcd<std::int64_t>(k.m, n));
  out.e = k.m / g;
  // residual degree: order of the class of epsilon in F_q^*/(F_q^*)^g
  if (g == 1) {
    out.f = 1;
  } else {
    std::int64_t t = F->lth_power_class(k.epsilon(), g);
    out.f = g / std::gcd<std::int64_t>(g, t == 0 ? g : t);
  }
  if (g == 1 && k.m > 1) {
    // K_inf = k_inf(m-th root of delta pi^r) with r = -n mod m, delta = gamma^a,
    // a r = 1 mod m
    int r = ((-n) % k.m + k.m) % k.m;
    int aa = 0;
    for (int cand = 1; cand < k.m; ++cand)
      if ((cand * r) % k.m == 1) {
        aa = cand;
        break;
      }
    check_invariant(aa != 0, "no inverse of the reduced exponent");
    out.uniformizer = std::make_pair(F->pow(k.gamma, aa), r);
  }
  return out;
}

AssociatedCyclotomic associated_cyclotomic(const KummerExtension& k) {
  AssociatedCyclotomic out;
  DirichletCharacter chi = kummer_character(FactoredRadicand::star_form(k), k.m);
  if (chi.is_trivial())
    out.e = CyclotomicField::rationals(k.field);
  else
    out.e = CyclotomicField(CharacterGroup::generated_by({chi}));
  out.constants_degree = k.constants_degree_of_radical();
  return out;
}

namespace {

// The unique subgroup of order h of the cyclic inertia image at infinity.
Subgroup infinity_subgroup_of_order(const CyclotomicField& e, const mpz_class& h) {
  auto gal = e.galois_group();
  GroupElem sigma = hom_apply(gal.projection, gal.group,
                              e.structure()->encode_constant(e.structure()->field()->primitive_root()));
  mpz_class order = gal.group.element_order(sigma);
  if (order % h != 0)
    throw unsupported_error("ambiguous H: the required order does not divide the inertia at infinity");
  GroupElem gen = gal.group.smul(order / h, sigma);
  Subgroup s = Subgroup::from_generators(gal.group, {gen});
  check_invariant(s.order() == h, "infinity subgroup has the wrong order");
  return s;
}

mpz_class f_infinity_of_composite(const mpz_class& f_k, const mpz_class& c) {
  return lcm(f_k, c) / f_k;
}

}  // namespace

Subgroup decomposition_H(const KummerExtension& k, const CyclotomicField& e) {
  InfinityData inf = infinity_data(k);
  mpz_class c = k.constants_degree_of_radical();
  mpz_class h = f_infinity_of_composite(inf.f, c);
  return infinity_subgroup_of_order(e, h);
}

// ---------------------------------------------------------------------------
// Composite fields in Lambda_N * k_m

CompositeField::CompositeField(ResidueUnitGroupPtr structure, int constants_level, Subgroup w)
    : g_(std::move(structure)), level_(constants_level), w_(std::move(w)) {}

AbGroup CompositeField::extended_group(const ResidueUnitGroup& g, int constants_level) {
  auto mods = g.group().mods();
  mods.push_back(constants_level);
  return AbGroup(std::move(mods));
}

CompositeField CompositeField::from_cyclotomic(const CyclotomicField& e, int constants_level) {
  return generated(e, constants_level, {});
}

CompositeField CompositeField::generated(const CyclotomicField& e, int constants_level,
                                         const std::vector<GroupElem>& extra) {
  auto g = e.structure();
  AbGroup ext = extended_group(*g, constants_level);
  const size_t k = g->group().rank();
  const Mat& basis = e.characters().subgroup().basis();
  Mat rows(basis.rows + extra.size(), k + 1);
  for (size_t i = 0; i < basis.rows; ++i)
    for (size_t j = 0; j < k; ++j) rows.at(i, j) = basis.at(i, j);
  for (size_t i = 0; i < extra.size(); ++i) {
    check_invariant(extra[i].size() == k + 1, "extended character has wrong rank");
    for (size_t j = 0; j <= k; ++j) rows.at(basis.rows + i, j) = extra[i][j];
  }
  return {g, constants_level, Subgroup::from_lattice_rows(ext, rows)};
}

mpz_class CompositeField::constants_degree() const {
  const AbGroup& ext = w_.ambient();
  GroupElem shift(ext.rank(), 0);
  shift[ext.rank() - 1] = 1;
  Subgroup consts = Subgroup::from_generators(ext, {shift});
  return w_.intersect(consts).order();
}

Subgroup CompositeField::inertia_infinity_ext() const {
  const AbGroup& ext = w_.ambient();
  const Mat& basis = g_->fq_star_image().basis();
  Mat rows(basis.rows, ext.rank());
  for (size_t i = 0; i < basis.rows; ++i)
    for (size_t j = 0; j < basis.cols; ++j) rows.at(i, j) = basis.at(i, j);
  return Subgroup::from_lattice_rows(ext, rows);
}

Subgroup CompositeField::decomposition_infinity_ext() const {
  const AbGroup& ext = w_.ambient();
  GroupElem shift(ext.rank(), 0);
  shift[ext.rank() - 1] = 1;
  return inertia_infinity_ext().sum(Subgroup::from_generators(ext, {shift}));
}

mpz_class CompositeField::e_at(const Poly& p) const {
  size_t idx = g_->factor_index(p);
  const AbGroup& ext = w_.ambient();
  Subgroup local = g_->local_factor_subgroup(idx);
  const Mat& basis = local.basis();
  Mat rows(basis.rows, ext.rank());
  for (size_t i = 0; i < basis.rows; ++i)
    for (size_t j = 0; j < basis.cols; ++j) rows.at(i, j) = basis.at(i, j);
  Subgroup ip = Subgroup::from_lattice_rows(ext, rows);
  Subgroup ann = annihilator(w_);
  return ip.order() / ip.intersect(ann).order();
}

mpz_class CompositeField::e_infinity() const {
  Subgroup i = inertia_infinity_ext();
  Subgroup ann = annihilator(w_);
  return i.order() / i.intersect(ann).order();
}

mpz_class CompositeField::d_infinity() const {
  Subgroup d = decomposition_infinity_ext();
  Subgroup ann = annihilator(w_);
  return d.order() / d.intersect(ann).order();
}

mpz_class CompositeField::d_infinity_over(const GroupElem& psi) const {
  check_invariant(w_.contains(psi), "psi must be a character of the composite field");
  const AbGroup& ext = w_.ambient();
  Subgroup psi_ann = annihilator(Subgroup::from_generators(ext, {psi}));
  Subgroup d = decomposition_infinity_ext();
  Subgroup ann = annihilator(w_);
  Subgroup top = d.intersect(psi_ann);
  return top.order() / top.intersect(ann).order();
}

bool CompositeField::same_ambient(const CompositeField& o) const {
  return g_->modulus_poly() == o.g_->modulus_poly() && level_ == o.level_;
}

bool CompositeField::operator==(const CompositeField& o) const {
  return same_ambient(o) && w_ == o.w_;
}

bool CompositeField::contains(const CompositeField& o) const {
  check_invariant(same_ambient(o), "composite fields live in different ambients");
  return w_.contains_subgroup(o.w_);
}

// ---------------------------------------------------------------------------
// The genus pipeline

const char* exactness_rule_name(ExactnessRule r) {
  switch (r) {
    case ExactnessRule::kHTrivial:
      return "H-trivial";
    case ExactnessRule::kBoundsCoincide:
      return "bounds-coincide";
    case ExactnessRule::kSingleRamifiedConstants:
      return "single-ramified-prime-constants";
    case ExactnessRule::kIntervalOnly:
      return "interval-only";
  }
  return "unknown";
}

namespace {

GenusResult pipeline_for_cyclotomic(const CyclotomicField& e) {
  GenusResult res;
  res.e = e;
  res.h_order = 1;
  res.e_sub_h = e;
  res.genus_e = e.genus();
  res.extended_genus_e = e.extended_genus();
  res.gk_cyclotomic = res.genus_e;
  res.lower = res.genus_e.extended_genus();
  res.upper = res.extended_genus_e;
  res.with_radical = false;
  res.exact = true;
  res.rule = ExactnessRule::kHTrivial;
  res.ge_cyclotomic = res.extended_genus_e;
  res.constants_degree_gk = 1;
  res.constants_degree_gek = 1;
  check_invariant(CyclotomicField::is_subfield(res.lower, res.upper),
                  "lower bound must sit inside the upper bound");
  return res;
}

// Transport H to the genus field through the cyclic inertia at infinity.
CyclotomicField fixed_by_transported_h(const CyclotomicField& ge, const mpz_class& h) {
  if (h == 1) return ge;
  Subgroup hg = infinity_subgroup_of_order(ge, h);
  return ge.fixed_field(hg);
}

GenusResult pipeline_common(const CyclotomicField& e, const mpz_class& h_order) {
  GenusResult res;
  res.e = e;
  res.h_order = h_order;
  // H as the unique order-h subgroup of the inertia image of infinity
  if (h_order == 1) {
    res.e_sub_h = e;
  } else {
    Subgroup h = infinity_subgroup_of_order(e, h_order);
    res.e_sub_h = e.fixed_field(h);
  }
  res.genus_e = e.genus();
  res.extended_genus_e = e.extended_genus();
  res.gk_cyclotomic = fixed_by_transported_h(res.genus_e, h_order);
  res.lower = res.gk_cyclotomic.extended_genus();
  res.upper = res.extended_genus_e;
  check_invariant(CyclotomicField::is_subfield(res.lower, res.upper),
                  "lower bound must sit inside the upper bound");
  return res;
}

}  // namespace

GenusResult genus_pipeline(const AbelianGenusInput& input) {
  if (std::holds_alternative<CyclotomicField>(input))
    return pipeline_for_cyclotomic(std::get<CyclotomicField>(input));

  if (std::holds_alternative<AbstractGenusInput>(input)) {
    const auto& abs = std::get<AbstractGenusInput>(input);
    if (!abs.ek_constants)
      throw unsupported_error("abstract inputs must have EK/K a constants extension");
    // H must land inside the inertia image of infinity (it is the
    // decomposition group of infinite primes of a constants extension)
    Subgroup ie = abs.e.infinity_inertia_image();
    if (!ie.contains_subgroup(abs.h))
      throw unsupported_error(
          "ambiguous H: the given subgroup does not lie in the inertia at infinity");
    GenusResult res = pipeline_common(abs.e, abs.h.order());
    res.e_sub_h = abs.e.fixed_field(abs.h);  // use the exact given H
    res.with_radical = true;
    if (res.h_order == 1) {
      res.exact = true;
      res.rule = ExactnessRule::kHTrivial;
      res.ge_cyclotomic = res.upper;
    } else if (res.lower.same_field(res.upper)) {
      res.exact = true;
      res.rule = ExactnessRule::kBoundsCoincide;
      res.ge_cyclotomic = res.upper;
    } else {
      res.exact = false;
      res.rule = ExactnessRule::kIntervalOnly;
    }
    return res;
  }

  const auto& k = std::get<KummerExtension>(input);
  auto assoc = associated_cyclotomic(k);
  InfinityData inf = infinity_data(k);
  mpz_class c = assoc.constants_degree;
  mpz_class h = f_infinity_of_composite(inf.f, c);

  GenusResult res = pipeline_common(assoc.e, h);
  res.with_radical = true;
  res.input_kummer = k;
  res.at_infinity = inf;
  res.ek_constants_degree = assoc.constants_degree;

  // exactness rules, in order
  if (h == 1) {
    res.exact = true;
    res.rule = ExactnessRule::kHTrivial;
    res.ge_cyclotomic = res.upper;
  } else if (res.lower.same_field(res.upper)) {
    res.exact = true;
    res.rule = ExactnessRule::kBoundsCoincide;
    res.ge_cyclotomic = res.upper;
  } else if (is_prime_int(k.m) && k.degree_d() % k.m != 0 && inf.f == 1) {
    res.exact = true;
    res.rule = ExactnessRule::kSingleRamifiedConstants;
    res.ge_cyclotomic = res.upper;
  } else {
    res.exact = false;
    res.rule = ExactnessRule::kIntervalOnly;
  }

  // Extended descriptors over Lambda_N * k_m.
  const int level = k.m;
  auto structure = assoc.e.structure();
  const size_t rank = structure->group().rank();
  GroupElem psi(rank + 1, 0);
  {
    // psi_K = (chi_{D^*}, t_epsilon)
    DirichletCharacter chi = kummer_character(FactoredRadicand::star_form(k), k.m);
    if (!chi.is_trivial()) {
      check_invariant(chi.structure()->modulus_poly() == structure->modulus_poly(),
                      "star character modulus mismatch");
      for (size_t i = 0; i < rank; ++i) psi[i] = chi.dual()[i];
    }
    std::int64_t t = k.epsilon_class();
    psi[rank] = t;
  }
  res.k_composite = CompositeField::generated(
      CyclotomicField{CharacterGroup::trivial(structure)}, level, {psi});
  res.gk_composite = CompositeField::generated(res.gk_cyclotomic, level, {psi});
  res.lower_composite = CompositeField::generated(res.lower, level, {psi});
  res.upper_composite = CompositeField::generated(res.upper, level, {psi});
  if (res.exact) {
    res.gek_composite = CompositeField::generated(res.ge_cyclotomic, level, {psi});
    res.constants_degree_gek = res.gek_composite->constants_degree().get_si();
  }
  res.constants_degree_gk = res.gk_composite->constants_degree().get_si();

  // Cross-checks.
  // |H| equals the infinity decomposition of EK over K.
  CompositeField ek = CompositeField::generated(assoc.e, level, {psi});
  check_invariant(ek.d_infinity_over(psi) == h, "H does not match the EK/K decomposition group");
  // gE K / K has the same infinity decomposition (canonical isomorphism).
  CompositeField gek0 = CompositeField::generated(res.genus_e, level, {psi});
  check_invariant(gek0.d_infinity_over(psi) == h,
                  "H does not match the gE K/K decomposition group");
  // gK/K and geK/K are unramified at every finite prime.
  for (size_t i = 0; i < structure->factor_count(); ++i) {
    const Poly& p = structure->prime(i);
    check_invariant(res.gk_composite->e_at(p) == res.k_composite->e_at(p),
                    "gK ramifies over K at a finite prime");
    if (res.exact)
      check_invariant(res.gek_composite->e_at(p) == res.k_composite->e_at(p),
                      "geK ramifies over K at a finite prime");
  }
  // Rule (iii) asserts the constants jump of the paper's argument.
  if (res.rule == ExactnessRule::kSingleRamifiedConstants)
    check_invariant(res.constants_degree_gek == k.m,
                    "single-ramified-prime pattern: constants degree must be l");
  return res;
}

// ---------------------------------------------------------------------------
// The Q_i recipe

QRecipe q_coefficients(const KummerExtension& k) {
  const auto& F = k.field;
  int l = radical_prime(k.m);
  if (l * l != k.m)
    throw unsupported_error("the Q_i recipe applies to the l^2 radical shape");
  const auto& factors = k.radicand.factors;
  // pick P_1: gcd(alpha, l) = 1 and l must not divide deg P_1
  size_t first = factors.size();
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].second % l != 0 && factors[i].first.degree() % l != 0) {
      first = i;
      break;
    }
  if (first == factors.size())
    throw value_error("Q recipe precondition violated: no prime with gcd(alpha, l) = 1 and l not dividing deg P_1");

  QRecipe out;
  int d1 = factors[first].first.degree();
  // a d1 + b l^2 = 1, deterministic a in [1, l^2)
  for (int cand = 1; cand < k.m; ++cand)
    if ((cand * d1) % k.m == 1 % k.m) {
      out.a = cand;
      break;
    }
  check_invariant(out.a != 0, "no Bezout coefficient: l divides deg P_1");
  out.b = (1 - out.a * d1) / k.m;

  const Poly& p1 = factors[first].first;
  out.genus_generators.push_back({l, RationalFn::from_poly(p1.star_twist())});
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i == first) continue;
    const auto& [pi, alpha] = factors[i];
    long zi = -out.a * pi.degree();
    out.z.push_back(zi);
    Poly num = pi, den = Poly::one(F);
    long e = zi;
    for (long t = 0; t < std::labs(e); ++t) {
      if (e > 0)
        num = num * p1;
      else
        den = den * p1;
    }
    RationalFn qi = RationalFn::make(num, den);
    out.q_functions.push_back(qi);
    int root = (alpha % l != 0) ? k.m : l;
    out.genus_generators.push_back({root, qi});
  }
  return out;
}

CyclotomicField field_of_radicals(const std::vector<RadicalGenerator>& gens, const Poly& modulus) {
  auto target = ResidueUnitGroup::shared(modulus.monic());
  std::vector<GroupElem> vecs;
  for (const auto& g : gens) {
    DirichletCharacter chi = kummer_character(FactoredRadicand::from_rational(g.radicand),
                                              g.root_exponent);
    if (chi.is_trivial()) continue;
    vecs.push_back(chi.inflate_to(target).dual());
  }
  if (vecs.empty()) return CyclotomicField{CharacterGroup::trivial(target)};
  return CyclotomicField{
      CharacterGroup(target, Subgroup::from_generators(target->group(), vecs))};
}

}  // namespace fqgenus
