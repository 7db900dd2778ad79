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

#include "fqgenus/report.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace fqgenus {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint64_t> factor_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

void parallel_over(size_t count, int jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  int n = std::min<size_t>(jobs, count);
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

FqFieldPtr RunConfig::make_field() const {
  auto primes = factor_u64(q);
  if (q < 2 || primes.empty()) throw parse_error("q must be a prime power >= 2");
  std::uint64_t p = primes[0];
  for (auto f : primes)
    if (f != p) throw parse_error("q must be a prime power, got " + std::to_string(q));
  unsigned s = static_cast<unsigned>(primes.size());
  if (s == 1 && field_modulus.empty()) return FqField::make(p);
  if (field_modulus.empty()) return FqField::make(p, s);
  // modulus given as a polynomial in g over F_p
  auto fp = FqField::make(p);
  std::string text = field_modulus;
  for (auto& ch : text)
    if (ch == 'g') ch = 'T';
  Poly mod = Poly::parse(fp, text);
  if (mod.degree() != static_cast<int>(s))
    throw parse_error("field modulus must have degree s = " + std::to_string(s));
  std::vector<std::uint32_t> coeffs;
  for (int i = 0; i <= mod.degree(); ++i) coeffs.push_back(mod.coeff(i).v);
  return FqField::make(p, s, coeffs);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json subgroup_generators_json(const CharacterGroup& x) {
  json gens = json::array();
  for (const auto& chi : x.generators()) {
    json v = json::array();
    for (const auto& c : chi.dual()) v.push_back(c.get_str());
    gens.push_back(v);
  }
  return gens;
}

}  // namespace

json ramification_to_json(const RamificationReport& rep) {
  json out;
  out["degree"] = rep.degree.get_str();
  json finite = json::array();
  for (const auto& pr : rep.finite) {
    finite.push_back({{"prime", pr.prime.format()},
                      {"e", pr.e.get_str()},
                      {"f", pr.f.get_str()},
                      {"g", pr.g.get_str()}});
  }
  out["finite"] = finite;
  out["infinity"] = {{"e", rep.e_infinity.get_str()},
                     {"f", rep.f_infinity.get_str()},
                     {"g", rep.g_infinity.get_str()}};
  out["constant_degree"] = rep.constant_degree;
  return out;
}

json field_to_json(const CyclotomicField& e) {
  json out;
  out["q"] = e.structure()->field()->q();
  out["modulus"] = e.structure()->modulus_poly().format();
  out["degree"] = e.degree().get_str();
  out["character_generators"] = subgroup_generators_json(e.characters());
  out["conductor"] = e.characters().conductor().factors.empty()
                         ? "1"
                         : e.characters().conductor().value().format();
  out["ramification"] = ramification_to_json(e.ramification());
  out["canonical_key"] = e.canonical_key();
  return out;
}

json character_to_json(const DirichletCharacter& chi) {
  json out;
  out["modulus"] = chi.modulus().format();
  json v = json::array();
  for (const auto& c : chi.dual()) v.push_back(c.get_str());
  out["exponents"] = v;
  out["order"] = chi.order().get_str();
  auto cond = chi.conductor();
  out["conductor"] = cond.factors.empty() ? "1" : cond.value().format();
  out["restriction_index"] = chi.restriction_index();
  return out;
}

json genus_result_to_json(const GenusResult& res) {
  json out;
  out["exact"] = res.exact;
  out["exactness_rule"] = exactness_rule_name(res.rule);
  out["h_order"] = res.h_order.get_str();
  out["E"] = field_to_json(res.e);
  out["E_sub_H"] = field_to_json(res.e_sub_h);
  out["genus_E"] = field_to_json(res.genus_e);
  out["extended_genus_E"] = field_to_json(res.extended_genus_e);
  out["ek_constants_degree"] = res.ek_constants_degree;

  json gk;
  gk["cyclotomic_part"] = field_to_json(res.gk_cyclotomic);
  gk["with_radical"] = res.with_radical;
  if (res.gk_composite) {
    gk["degree_over_k"] = res.gk_composite->degree().get_str();
    gk["constants_degree"] = res.constants_degree_gk;
  }
  out["gK"] = gk;

  if (res.exact) {
    json ge;
    ge["cyclotomic_part"] = field_to_json(res.ge_cyclotomic);
    ge["with_radical"] = res.with_radical;
    if (res.gek_composite) {
      ge["degree_over_k"] = res.gek_composite->degree().get_str();
      ge["constants_degree"] = res.constants_degree_gek;
    }
    out["geK"] = {{"exact", ge}};
  } else {
    json lower, upper;
    lower["cyclotomic_part"] = field_to_json(res.lower);
    upper["cyclotomic_part"] = field_to_json(res.upper);
    lower["with_radical"] = res.with_radical;
    upper["with_radical"] = res.with_radical;
    if (res.lower_composite) {
      lower["degree_over_k"] = res.lower_composite->degree().get_str();
      lower["constants_degree"] = res.lower_composite->constants_degree().get_si();
    }
    if (res.upper_composite) {
      upper["degree_over_k"] = res.upper_composite->degree().get_str();
      upper["constants_degree"] = res.upper_composite->constants_degree().get_si();
    }
    out["geK"] = {{"interval", {{"lower", lower}, {"upper", upper}}}};
  }

  if (res.at_infinity) {
    json inf;
    inf["e"] = res.at_infinity->e.get_str();
    inf["f"] = res.at_infinity->f.get_str();
    if (res.at_infinity->uniformizer) {
      const auto& fld = res.e.structure()->field();
      inf["uniformizer"] = {{"delta", fld->format(res.at_infinity->uniformizer->first)},
                            {"reduced_exponent", res.at_infinity->uniformizer->second}};
    }
    out["infinity"] = inf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Poly parse_modulus(const FqFieldPtr& f, const std::string& text) {
  if (text.empty()) throw parse_error("missing modulus polynomial (--N)");
  Poly n = Poly::parse(f, text);
  if (n.degree() < 1) throw parse_error("modulus must have degree >= 1");
  if (!n.is_monic()) throw parse_error("modulus must be monic");
  return n;
}

GroupElem parse_exponents(const AbGroup& g, const std::string& text) {
  GroupElem e;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) throw parse_error("empty entry in exponent vector");
      e.emplace_back(cur);
      cur.clear();
    } else if ((ch >= '0' && ch <= '9') || ch == '-') {
      cur += ch;
    } else if (ch != ' ') {
      throw parse_error("bad character in exponent vector");
    }
  }
  if (e.size() != g.rank())
    throw parse_error("exponent vector has rank " + std::to_string(e.size()) + ", expected " +
                      std::to_string(g.rank()));
  return g.reduce(std::move(e));
}

DirichletCharacter parse_radical_character(const FqFieldPtr& f, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw parse_error("radical character spec must be m:radicand, got " + spec);
  int m = 0;
  try {
    m = std::stoi(spec.substr(0, colon));
  } catch (const std::exception&) {
    throw parse_error("bad radical exponent in " + spec);
  }
  RationalFn a = RationalFn::parse(f, spec.substr(colon + 1));
  return kummer_character(FactoredRadicand::from_rational(a), m);
}

CyclotomicField field_from_specs(const RunConfig& cfg, const FqFieldPtr& f) {
  Poly n = parse_modulus(f, cfg.n_text);
  auto g = ResidueUnitGroup::shared(n);
  if (cfg.full_dual) return CyclotomicField{CharacterGroup::full_dual(g)};
  std::vector<GroupElem> gens;
  for (const auto& spec : cfg.chi_specs) gens.push_back(parse_exponents(g->group(), spec));
  for (const auto& spec : cfg.radical_specs) {
    auto chi = parse_radical_character(f, spec);
    if (chi.is_trivial()) continue;
    gens.push_back(chi.inflate_to(g).dual());
  }
  if (gens.empty())
    throw parse_error("no characters given: use --chi, --radical or --full-dual");
  return CyclotomicField{CharacterGroup(g, Subgroup::from_generators(g->group(), gens))};
}

json echo_inputs(const RunConfig& cfg) {
  json in;
  in["q"] = cfg.q;
  if (!cfg.field_modulus.empty()) in["field_modulus"] = cfg.field_modulus;
  if (!cfg.n_text.empty()) in["N"] = cfg.n_text;
  if (!cfg.d_text.empty()) in["D"] = cfg.d_text;
  if (!cfg.chi_specs.empty()) in["chi"] = cfg.chi_specs;
  if (!cfg.radical_specs.empty()) in["radical"] = cfg.radical_specs;
  return in;
}

}  // namespace

Report cmd_unitgroup(const RunConfig& cfg) {
  auto f = cfg.make_field();
  Poly n = parse_modulus(f, cfg.n_text);
  auto g = ResidueUnitGroup::shared(n);

  Report rep;
  rep.payload["result"]["order"] = g->order().get_str();
  json mods = json::array();
  for (const auto& d : g->group().mods()) mods.push_back(d.get_str());
  rep.payload["result"]["invariant_factors"] = mods;
  json gens = json::array();
  for (const auto& p : g->invariant_generators()) gens.push_back(p.format());
  rep.payload["result"]["generators"] = gens;
  rep.payload["result"]["fq_star_image_order"] = g->fq_star_image().order().get_str();
  json factors = json::array();
  for (size_t i = 0; i < g->factor_count(); ++i)
    factors.push_back({{"prime", g->prime(i).format()}, {"alpha", g->alpha(i)}});
  rep.payload["result"]["modulus_factors"] = factors;

  // re-validate: generators decode/encode consistently and have the stated orders
  auto gens_p = g->invariant_generators();
  for (size_t i = 0; i < gens_p.size(); ++i) {
    GroupElem e(g->group().rank(), 0);
    e[i] = 1;
    check_invariant(g->encode(gens_p[i]) == e, "generator does not round-trip");
    check_invariant(
        poly_powmod(gens_p[i], g->group().mods()[i], g->modulus_poly()).is_one(),
        "generator order mismatch");
  }
  return rep;
}

Report cmd_char(const RunConfig& cfg) {
  auto f = cfg.make_field();
  Report rep;
  DirichletCharacter chi;
  if (!cfg.chi_specs.empty()) {
    Poly n = parse_modulus(f, cfg.n_text);
    auto g = ResidueUnitGroup::shared(n);
    if (cfg.chi_specs.size() != 1)
      throw parse_error("char takes exactly one --chi exponent vector");
    chi = DirichletCharacter(g, parse_exponents(g->group(), cfg.chi_specs[0]));
  } else if (cfg.radical_specs.size() == 1) {
    chi = parse_radical_character(f, cfg.radical_specs[0]);
    if (!cfg.n_text.empty()) chi = chi.inflate_to(ResidueUnitGroup::shared(parse_modulus(f, cfg.n_text)));
  } else {
    throw parse_error("char needs exactly one --chi or --radical spec");
  }
  rep.payload["result"]["character"] = character_to_json(chi);
  json comps = json::array();
  const auto& g = chi.structure();
  for (size_t i = 0; i < g->factor_count(); ++i)
    comps.push_back(character_to_json(chi.component(g->prime(i))));
  rep.payload["result"]["components"] = comps;
  // re-validate: the product of the components is the character, spot checks
  IrreducibleEnum en(f, 2);
  for (Poly q = en.next(); !q.is_zero(); q = en.next()) {
    if ((chi.modulus() % q).is_zero()) continue;
    UnityRoot total = UnityRoot::zero();
    for (size_t i = 0; i < g->factor_count(); ++i) {
      Poly pp = Poly::one(f);
      for (int t = 0; t < g->alpha(i); ++t) pp = pp * g->prime(i);
      total = total + chi.component(g->prime(i)).evaluate(q % pp);
    }
    check_invariant(total == chi.evaluate(q), "component product mismatch");
  }
  return rep;
}

Report cmd_extgenus(const RunConfig& cfg) {
  auto f = cfg.make_field();
  CyclotomicField e = field_from_specs(cfg, f);
  auto ge = e.extended_genus();
  auto gn = e.genus();
  Report rep;
  rep.payload["result"]["E"] = field_to_json(e);
  rep.payload["result"]["genus_E"] = field_to_json(gn);
  rep.payload["result"]["extended_genus_E"] = field_to_json(ge);
  rep.payload["result"]["degrees"] = {
      {"E", e.degree().get_str()}, {"gE", gn.degree().get_str()}, {"geE", ge.degree().get_str()}};
  return rep;
}

Report cmd_kummer(const RunConfig& cfg) {
  auto f = cfg.make_field();
  if (cfg.d_text.empty()) throw parse_error("missing radicand polynomial (--D)");
  Poly d = Poly::parse(f, cfg.d_text);
  FqElem gamma = f->parse(cfg.gamma_text);
  auto k = KummerExtension::make(f, cfg.m, gamma, d);
  auto res = genus_pipeline(k);
  Report rep;
  rep.payload["result"] = genus_result_to_json(res);
  if (res.at_infinity && res.at_infinity->uniformizer &&
      res.input_kummer && res.input_kummer->m >= 2) {
    // tie in the sign layer for the prime-radical pattern
    int m = res.input_kummer->m;
    bool prime_m = true;
    for (int t = 2; t * t <= m; ++t)
      if (m % t == 0) prime_m = false;
    if (prime_m) {
      LocalKummerAmbient amb{f, m, res.at_infinity->uniformizer->first};
      rep.payload["result"]["min_positive_degree"] = min_positive_degree(amb);
      rep.payload["result"]["sign_image_order"] = local_kummer_image_order(amb);
    }
  }
  if (!res.exact) rep.exit_code = kExitUnsupported;
  return rep;
}

// ---------------------------------------------------------------------------
// Oracle sweeps

void SweepStats::merge(const SweepStats& o) {
  instances += o.instances;
  checks += o.checks;
  failures += o.failures;
  if (first_failure.empty()) first_failure = o.first_failure;
  elapsed_seconds += o.elapsed_seconds;
}

json SweepStats::to_json() const {
  json out;
  out["instances"] = instances;
  out["checks"] = checks;
  out["failures"] = failures;
  out["pass"] = failures == 0;
  if (!first_failure.empty()) out["first_failure"] = first_failure;
  out["elapsed_seconds"] = elapsed_seconds;
  return out;
}

std::vector<Poly> moduli_with_phi_up_to(const FqFieldPtr& f, std::uint64_t max_phi) {
  std::vector<Poly> out;
  if (max_phi == 0) return out;
  for (int deg = 1; deg <= 16; ++deg) {
    std::uint64_t span = 1;
    bool overflow = false;
    for (int i = 0; i < deg; ++i) {
      span *= f->q();
      if (span > (1ull << 22)) {
        overflow = true;
        break;
      }
    }
    if (overflow) break;
    bool any = false;
    for (std::uint64_t idx = 0; idx < span; ++idx) {
      std::vector<FqElem> c(static_cast<size_t>(deg) + 1, f->zero());
      std::uint64_t v = idx;
      for (int i = 0; i < deg; ++i) {
        c[static_cast<size_t>(i)] = f->elem(v % f->q());
        v /= f->q();
      }
      c[static_cast<size_t>(deg)] = f->one();
      Poly n(f, std::move(c));
      mpz_class phi = factorize(n).euler_phi();
      if (phi <= static_cast<unsigned long>(max_phi)) {
        out.push_back(n);
        any = true;
      }
    }
    // minimal phi grows with the degree; two consecutive empty degrees end it
    if (!any && deg >= 2) {
      bool prev_empty = true;
      for (const auto& n : out)
        if (n.degree() == deg - 1) prev_empty = false;
      if (prev_empty) break;
    }
  }
  return out;
}

namespace {

std::vector<Poly> units_mod(const FqFieldPtr& f, const Poly& n) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n.degree(); ++i) total *= f->q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Poly u = Poly::from_index(f, idx, static_cast<unsigned>(n.degree()));
    if (poly_gcd(u, n).is_one()) out.push_back(u);
  }
  return out;
}

// brute-force invariant factors from solution counts of x^d = 1
std::vector<mpz_class> brute_invariants(const FqFieldPtr& f, const Poly& n,
                                        const std::vector<Poly>& units) {
  std::uint64_t order = units.size();
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= order; ++d)
    if (order % d == 0) divisors.push_back(d);
  std::vector<std::uint64_t> count(divisors.size());
  for (size_t i = 0; i < divisors.size(); ++i) {
    std::uint64_t c = 0;
    for (const auto& u : units)
      if (poly_powmod(u, mpz_class(static_cast<unsigned long>(divisors[i])), n).is_one()) ++c;
    count[i] = c;
  }
  std::vector<std::uint64_t> chain;
  std::vector<std::uint64_t> result;
  std::function<bool(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t remaining,
                                                              std::uint64_t max_next) -> bool {
    if (remaining == 1) {
      for (size_t i = 0; i < divisors.size(); ++i) {
        std::uint64_t expect = 1;
        for (auto di : chain) expect *= std::gcd(divisors[i], di);
        if (expect != count[i]) return false;
      }
      result = chain;
      return true;
    }
    for (auto d : divisors) {
      if (d < 2 || d > max_next || remaining % d != 0) continue;
      if (!chain.empty() && chain.back() % d != 0) continue;
      chain.push_back(d);
      if (rec(remaining / d, d)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (order == 1) return {};
  if (!rec(order, order)) return {mpz_class(0)};  // impossible: flagged as mismatch
  return {std::vector<mpz_class>(result.rbegin(), result.rend())};
}

struct FailureCollector {
  std::mutex mu;
  SweepStats stats;
  void note(std::uint64_t instances, std::uint64_t checks) {
    std::lock_guard<std::mutex> lock(mu);
    stats.instances += instances;
    stats.checks += checks;
  }
  void fail(const std::string& what) {
    std::lock_guard<std::mutex> lock(mu);
    ++stats.failures;
    if (stats.first_failure.empty()) stats.first_failure = what;
  }
};

}  // namespace

SweepStats sweep_unit_group_structure(const std::vector<std::uint64_t>& qs,
                                      std::uint64_t max_phi, int jobs) {
  auto t0 = Clock::now();
  FailureCollector fc;
  for (auto q : qs) {
    auto f = FqField::make(q);
    auto moduli = moduli_with_phi_up_to(f, max_phi);
    parallel_over(moduli.size(), jobs, [&](size_t i) {
      const Poly& n = moduli[i];
      try {
        auto g = ResidueUnitGroup::make(n);
        auto units = units_mod(f, n);
        std::uint64_t checks = 0;
        if (g->order() != static_cast<unsigned long>(units.size())) {
          fc.fail("unit count mismatch at N=" + n.format());
          return;
        }
        auto brute = brute_invariants(f, n, units);
        ++checks;
        if (!(g->group().mods() == brute)) {
          fc.fail("invariant factors mismatch at q=" + std::to_string(q) + " N=" + n.format());
          return;
        }
        for (const auto& u : units) {
          ++checks;
          if (!(g->decode(g->encode(u)) == u)) {
            fc.fail("encode/decode failed at N=" + n.format() + " u=" + u.format());
            return;
          }
        }
        // CRT reconstruction across factors
        if (g->factor_count() > 1) {
          for (const auto& u : units) {
            auto e = g->encode(u);
            for (size_t fi = 0; fi < g->factor_count(); ++fi) {
              ++checks;
              auto local = g->local_group(fi);
              Poly r = local->decode(g->crt_component(e, g->prime(fi)));
              Poly pp = local->modulus_poly();
              if (!((u % pp) == (r % pp))) {
                fc.fail("CRT component mismatch at N=" + n.format() + " u=" + u.format());
                return;
              }
            }
          }
        }
        fc.note(1, checks);
      } catch (const std::exception& ex) {
        fc.fail("exception at N=" + n.format() + ": " + ex.what());
      }
    });
  }
  fc.stats.elapsed_seconds = seconds_since(t0);
  return fc.stats;
}

SweepStats sweep_character_components(const std::vector<std::uint64_t>& qs,
                                      std::uint64_t max_phi, int jobs, bool fault_inject) {
  auto t0 = Clock::now();
  FailureCollector fc;
  std::atomic<bool> injected{false};
  for (auto q : qs) {
    auto f = FqField::make(q);
    auto moduli = moduli_with_phi_up_to(f, max_phi);
    parallel_over(moduli.size(), jobs, [&](size_t i) {
      const Poly& n = moduli[i];
      try {
        auto g = ResidueUnitGroup::shared(n);
        auto units = units_mod(f, n);
        std::vector<GroupElem> unit_classes;
        unit_classes.reserve(units.size());
        for (const auto& u : units) unit_classes.push_back(g->encode(u));
        // local data
        std::vector<Poly> prime_powers;
        std::vector<ResidueUnitGroupPtr> locals;
        std::vector<std::vector<GroupElem>> local_classes(g->factor_count());
        for (size_t fi = 0; fi < g->factor_count(); ++fi) {
          Poly pp = Poly::one(f);
          for (int t = 0; t < g->alpha(fi); ++t) pp = pp * g->prime(fi);
          prime_powers.push_back(pp);
          locals.push_back(g->local_group(fi));
          for (const auto& u : units) local_classes[fi].push_back(locals[fi]->encode(u % pp));
        }
        std::uint64_t checks = 0;
        for (const auto& cvec : g->group().all_elements()) {
          DirichletCharacter chi(g, cvec);
          std::vector<DirichletCharacter> comps;
          for (size_t fi = 0; fi < g->factor_count(); ++fi)
            comps.push_back(chi.component(g->prime(fi)));
          if (fault_inject && !injected.exchange(true) && g->factor_count() > 1 &&
              !chi.is_trivial()) {
            // deliberately corrupt the first component to demonstrate that the
            // sweep locates counterexamples
            GroupElem bad = comps[0].dual();
            bad[0] = bad[0] + 1;
            comps[0] = DirichletCharacter(comps[0].structure(),
                                          comps[0].structure()->group().reduce(std::move(bad)));
          }
          mpz_class l = 1;
          for (const auto& c : comps) l = lcm(l, c.order());
          ++checks;
          if (chi.order() != l) {
            fc.fail("order lcm identity failed at N=" + n.format());
            return;
          }
          for (size_t ui = 0; ui < units.size(); ++ui) {
            UnityRoot total = UnityRoot::zero();
            for (size_t fi = 0; fi < g->factor_count(); ++fi)
              total = total + comps[fi].evaluate_class(local_classes[fi][ui]);
            ++checks;
            if (!(total == chi.evaluate_class(unit_classes[ui]))) {
              fc.fail("component product mismatch at q=" + std::to_string(q) +
                      " N=" + n.format() + " chi=" + character_to_json(chi).dump() +
                      " u=" + units[ui].format());
              return;
            }
          }
        }
        fc.note(1, checks);
      } catch (const std::exception& ex) {
        fc.fail("exception at N=" + n.format() + ": " + ex.what());
      }
    });
  }
  fc.stats.elapsed_seconds = seconds_since(t0);
  return fc.stats;
}

SweepStats sweep_extended_genus(const std::vector<std::uint64_t>& qs, std::uint64_t max_phi,
                                std::uint64_t seed, int samples_per_modulus, int jobs) {
  auto t0 = Clock::now();
  FailureCollector fc;
  for (auto q : qs) {
    auto f = FqField::make(q);
    auto moduli = moduli_with_phi_up_to(f, max_phi);
    parallel_over(moduli.size(), jobs, [&](size_t i) {
      const Poly& n = moduli[i];
      try {
        auto g = ResidueUnitGroup::shared(n);
        const AbGroup& dual = g->group();
        // component matrices, local duals and the inflation maps
        size_t r = g->factor_count();
        std::vector<Mat> comp(r);
        std::vector<AbGroup> local_groups(r);
        {
          CharacterGroup full = CharacterGroup::full_dual(g);
          for (size_t fi = 0; fi < r; ++fi) {
            comp[fi] = full.component_matrix(g->prime(fi));
            local_groups[fi] = g->local_group(fi)->group();
          }
        }
        auto all_duals = dual.all_elements();

        // candidate character groups: all cyclic + seeded random non-cyclic
        std::vector<Subgroup> xs;
        std::set<std::string> seen;
        auto key_of = [](const Subgroup& s) {
          std::string k;
          const Mat& b = s.basis();
          for (const auto& e : b.a) k += e.get_str() + ";";
          return k;
        };
        for (const auto& v : all_duals) {
          Subgroup s = Subgroup::from_generators(dual, {v});
          if (seen.insert(key_of(s)).second) xs.push_back(s);
        }
        std::uint64_t nseed = seed;
        for (const auto& c : n.coeffs()) nseed = nseed * 1099511628211ull + c.v + q;
        std::mt19937_64 rng(nseed);
        int found = 0;
        for (int attempt = 0; attempt < 60 && found < samples_per_modulus; ++attempt) {
          GroupElem a = all_duals[rng() % all_duals.size()];
          GroupElem b = all_duals[rng() % all_duals.size()];
          Subgroup s = Subgroup::from_generators(dual, {a, b});
          // only keep genuinely non-cyclic groups
          mpz_class maxord = 1;
          for (const auto& e : s.elements()) maxord = std::max(maxord, dual.element_order(e));
          if (maxord == s.order()) continue;
          if (seen.insert(key_of(s)).second) {
            xs.push_back(s);
            ++found;
          }
        }

        std::uint64_t checks = 0;
        for (const auto& xsub : xs) {
          CyclotomicField e{CharacterGroup(g, xsub)};
          auto ge = e.extended_genus();
          const Subgroup& y = ge.characters().subgroup();
          // E inside geE
          ++checks;
          if (!y.contains_subgroup(xsub)) {
            fc.fail("geE does not contain E at N=" + n.format());
            return;
          }
          // e_P equality via the component images
          std::vector<Subgroup> yp(r);
          for (size_t fi = 0; fi < r; ++fi) {
            Subgroup xp = hom_image(comp[fi], local_groups[fi], xsub);
            yp[fi] = hom_image(comp[fi], local_groups[fi], y);
            ++checks;
            if (!(xp == yp[fi])) {
              fc.fail("e_P changed under ge at N=" + n.format() + " P=" +
                      g->prime(fi).format());
              return;
            }
          }
          // maximality: any character outside Y must bump some component
          for (const auto& psi : all_duals) {
            if (y.contains(psi)) continue;
            bool grows = false;
            for (size_t fi = 0; fi < r && !grows; ++fi)
              if (!yp[fi].contains(hom_apply(comp[fi], local_groups[fi], psi))) grows = true;
            ++checks;
            if (!grows) {
              fc.fail("maximality violated at N=" + n.format());
              return;
            }
          }
          // idempotence
          ++checks;
          if (!(ge.extended_genus().characters().subgroup() == y)) {
            fc.fail("ge not idempotent at N=" + n.format());
            return;
          }
          // genus: X inside gE inside Y with e_infinity preserved
          auto gn = e.genus();
          ++checks;
          if (!gn.characters().subgroup().contains_subgroup(xsub) ||
              !y.contains_subgroup(gn.characters().subgroup()) ||
              gn.characters().restriction_order() != e.characters().restriction_order()) {
            fc.fail("genus placement failed at N=" + n.format());
            return;
          }
        }
        fc.note(xs.size(), checks);
      } catch (const std::exception& ex) {
        fc.fail("exception at N=" + n.format() + ": " + ex.what());
      }
    });
  }
  fc.stats.elapsed_seconds = seconds_since(t0);
  return fc.stats;
}

// ---------------------------------------------------------------------------
// Duality sweep over abstract groups

namespace {

// all subgroups of an elementary abelian p-group, by reduced row echelon
// enumeration (subspaces of F_p^k)
void elementary_subgroups(const AbGroup& g, std::uint64_t p,
                          const std::function<void(const Subgroup&)>& emit) {
  size_t k = g.rank();
  std::vector<size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  // iterate over pivot subsets
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    std::vector<size_t> pivots;
    for (size_t j = 0; j < k; ++j)
      if (mask & (1ull << j)) pivots.push_back(j);
    // free positions: row i, column j > pivots[i], j not a pivot
    std::vector<std::pair<size_t, size_t>> free_pos;
    for (size_t i = 0; i < pivots.size(); ++i)
      for (size_t j = pivots[i] + 1; j < k; ++j)
        if (!(mask & (1ull << j))) free_pos.emplace_back(i, j);
    std::uint64_t combos = 1;
    for (size_t t = 0; t < free_pos.size(); ++t) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      Mat rows(pivots.size(), k);
      std::uint64_t v = c;
      for (size_t i = 0; i < pivots.size(); ++i) rows.at(i, pivots[i]) = 1;
      for (const auto& [i, j] : free_pos) {
        rows.at(i, j) = static_cast<unsigned long>(v % p);
        v /= p;
      }
      emit(Subgroup::from_lattice_rows(g, rows));
    }
  }
}

// all subgroups of a general abelian p-group by closure search, climbing
// only through index-p steps: S' = S + <g> with p g in S
void bfs_subgroups(const AbGroup& g, std::uint64_t p,
                   const std::function<void(const Subgroup&)>& emit) {
  auto elems = g.all_elements();
  std::vector<Subgroup> found{Subgroup::trivial(g)};
  std::set<std::string> seen;
  auto key_of = [](const Subgroup& s) {
    std::string k;
    for (const auto& e : s.basis().a) k += e.get_str() + ";";
    return k;
  };
  seen.insert(key_of(found[0]));
  size_t scan = 0;
  mpz_class pz = static_cast<unsigned long>(p);
  while (scan < found.size()) {
    Subgroup s = found[scan++];
    emit(s);
    for (const auto& e : elems) {
      if (!s.contains(g.smul(pz, e)) || s.contains(e)) continue;
      Subgroup bigger = s.sum(Subgroup::from_generators(g, {e}));
      if (seen.insert(key_of(bigger)).second) found.push_back(bigger);
    }
  }
}

void partitions_of(unsigned n, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned part = std::min(left, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
}

}  // namespace

SweepStats sweep_duality(unsigned long max_order, int jobs) {
  auto t0 = Clock::now();
  FailureCollector fc;

  // enumerate abelian groups of order <= max_order as products of p-groups;
  // subgroups factor through the p-parts, so duality over each p-group
  // suffices together with mixed spot groups handled as products
  struct Task {
    AbGroup group;
    bool elementary;
    std::uint64_t p;
  };
  std::vector<Task> tasks;
  for (unsigned long n = 2; n <= max_order; ++n) {
    auto pf = factor_u64(n);
    bool prime_power = true;
    for (auto p : pf)
      if (p != pf[0]) prime_power = false;
    if (!prime_power) continue;  // covered by the p-parts plus product spot checks
    std::uint64_t p = pf[0];
    unsigned e = static_cast<unsigned>(pf.size());
    std::vector<std::vector<unsigned>> parts;
    partitions_of(e, parts);
    for (const auto& part : parts) {
      std::vector<mpz_class> mods;
      bool elementary = true;
      for (unsigned x : part) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), x);
        mods.push_back(m);
        if (x != 1) elementary = false;
      }
      tasks.push_back({AbGroup(mods), elementary, p});
    }
  }
  // a few mixed-order spot groups built as products
  for (auto mods : std::vector<std::vector<long>>{{6}, {2, 6}, {12}, {2, 3, 4}, {30}, {6, 6}, {60}}) {
    std::vector<mpz_class> m(mods.begin(), mods.end());
    AbGroup g(m);
    if (g.order() <= static_cast<unsigned long>(max_order)) tasks.push_back({g, false, 0});
  }

  parallel_over(tasks.size(), jobs, [&](size_t i) {
    const Task& task = tasks[i];
    try {
      std::uint64_t checks = 0;
      std::uint64_t count = 0;
      auto verify = [&](const Subgroup& s) {
        ++count;
        auto ann = annihilator(s);
        checks += 2;
        if (s.order() * ann.order() != task.group.order()) {
          fc.fail("|S| |Ann S| != |G| in group of order " + task.group.order().get_str());
          return;
        }
        if (!(annihilator(ann) == s)) {
          fc.fail("Ann(Ann(S)) != S in group of order " + task.group.order().get_str());
          return;
        }
      };
      if (task.elementary)
        elementary_subgroups(task.group, task.p, verify);
      else
        bfs_subgroups(task.group, verify);
      fc.note(count, checks);
    } catch (const std::exception& ex) {
      fc.fail(std::string("exception in duality sweep: ") + ex.what());
    }
  });
  fc.stats.elapsed_seconds = seconds_since(t0);
  return fc.stats;
}

SweepStats sweep_signs(std::uint64_t seed) {
  auto t0 = Clock::now();
  SweepStats stats;
  auto fail = [&](const std::string& what) {
    ++stats.failures;
    if (stats.first_failure.empty()) stats.first_failure = what;
  };

  // multiplicativity of phi_infinity on 10^4 seeded random pairs
  auto f5 = FqField::make(5);
  std::mt19937_64 rng(seed);
  auto random_rational = [&](const FqFieldPtr& f) {
    auto rand_poly = [&](int max_deg) {
      std::uint64_t span = 1;
      for (int i = 0; i <= max_deg; ++i) span *= f->q();
      return Poly::from_index(f, rng() % span, static_cast<unsigned>(max_deg + 1));
    };
    Poly num(f), den(f);
    while (num.is_zero()) num = rand_poly(5);
    while (den.is_zero()) den = rand_poly(4);
    return RationalFn::make(num, den);
  };
  for (int i = 0; i < 10000; ++i) {
    auto x = random_rational(f5);
    auto y = random_rational(f5);
    ++stats.checks;
    if (!(sign_infty(x * y) == f5->mul(sign_infty(x), sign_infty(y)))) {
      fail("phi_infinity multiplicativity failed");
      break;
    }
  }
  ++stats.instances;

  // local Kummer homomorphism, exhaustive over (m, xi) for q = 5, ell = 2
  for (std::uint64_t dv : {2ull, 3ull}) {
    LocalKummerAmbient amb{f5, 2, f5->elem(dv)};
    int span = amb.ell * static_cast<int>(f5->q() - 1);
    for (int m1 = 0; m1 < span; ++m1)
      for (std::uint64_t x1 = 1; x1 < 5; ++x1)
        for (int m2 = 0; m2 < span; ++m2)
          for (std::uint64_t x2 = 1; x2 < 5; ++x2) {
            LocalKummerElem a{m1, f5->elem(x1), {}};
            LocalKummerElem b{m2, f5->elem(x2), {}};
            LocalKummerElem ab{m1 + m2, f5->mul(f5->elem(x1), f5->elem(x2)), {}};
            ++stats.checks;
            if (!(sign_local_kummer(amb, ab) ==
                  f5->mul(sign_local_kummer(amb, a), sign_local_kummer(amb, b)))) {
              fail("local Kummer sign is not a homomorphism");
              m1 = span;
              m2 = span;
              break;
            }
          }
    // norm compatibility on all small inputs
    for (int m = -8; m <= 8; ++m)
      for (std::uint64_t xi = 1; xi < 5; ++xi) {
        ++stats.checks;
        if (!norm_sign_compat(amb, LocalKummerElem{m, f5->elem(xi), {}})) {
          fail("norm compatibility failed");
          break;
        }
      }
    // Sig size and the divisibility law
    try {
      ++stats.checks;
      sig_size(f5, {local_kummer_image_order(amb)});
    } catch (const std::exception& ex) {
      fail(std::string("sig_size: ") + ex.what());
    }
    ++stats.instances;
  }
  stats.elapsed_seconds = seconds_since(t0);
  return stats;
}

Report cmd_oracle(const RunConfig& cfg) {
  Report rep;
  auto units = sweep_unit_group_structure(cfg.oracle_qs, cfg.max_phi, cfg.jobs);
  auto comps = sweep_character_components(cfg.oracle_qs, cfg.max_phi, cfg.jobs, cfg.fault_inject);
  auto genus = sweep_extended_genus(cfg.oracle_qs, cfg.max_phi, cfg.seed,
                                    cfg.samples_per_modulus, cfg.jobs);
  auto duality = sweep_duality(cfg.duality_max_order, cfg.jobs);
  auto signs = sweep_signs(cfg.seed);
  rep.payload["result"]["unit_group_structure"] = units.to_json();
  rep.payload["result"]["character_components"] = comps.to_json();
  rep.payload["result"]["extended_genus"] = genus.to_json();
  rep.payload["result"]["duality"] = duality.to_json();
  rep.payload["result"]["signs"] = signs.to_json();
  SweepStats total;
  total.merge(units);
  total.merge(comps);
  total.merge(genus);
  total.merge(duality);
  total.merge(signs);
  rep.payload["result"]["total"] = total.to_json();
  if (total.failures > 0) rep.exit_code = kExitInvariant;
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in worked examples

namespace {

void require_shape(bool ok, const std::string& condition) {
  if (!ok) throw unsupported_error("precondition violated: " + condition);
}

json check_entry(const std::string& name, bool pass, const std::string& detail = "") {
  json j;
  j["check"] = name;
  j["pass"] = pass;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

}  // namespace

Report cmd_paper_examples(const RunConfig& cfg) {
  Report rep;
  json checks = json::array();
  bool all_pass = true;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back(check_entry(name, pass, detail));
    if (!pass) all_pass = false;
  };

  auto f5 = FqField::make(5);

  // First instance: quadratic radical k(sqrt(gamma T)) over F_5.
  {
    FqElem gamma = f5->parse(cfg.gamma_text.empty() ? "2" : cfg.gamma_text);
    Poly d = Poly::parse(f5, "T");
    // shape: l prime with l | q-1, l not dividing deg D, gamma not congruent
    // to (-1)^deg D mod l-th powers
    require_shape(!f5->is_zero(gamma), "gamma must be nonzero");
    auto k = KummerExtension::make(f5, 2, gamma, d);
    require_shape(k.degree_d() % k.m != 0, "l must not divide deg D");
    require_shape(k.epsilon_class() != 0,
                  "gamma = (-1)^deg(D) mod (F_q^*)^l makes the radical cyclotomic");

    auto res = genus_pipeline(k);
    add("ex1.rule", res.rule == ExactnessRule::kSingleRamifiedConstants,
        exactness_rule_name(res.rule));
    add("ex1.gK = K", res.gk_cyclotomic.is_rational() &&
                          *res.gk_composite == *res.k_composite);
    add("ex1.geK constants degree", res.constants_degree_gek == 2,
        std::to_string(res.constants_degree_gek));
    add("ex1.H order", res.h_order == 2, res.h_order.get_str());
    add("ex1.E^H = k", res.e_sub_h.is_rational());
    // canonical descriptor of geK: the cyclotomic part is E = k(sqrt(T^*))
    auto e_expected = field_of_radicals({{2, RationalFn::parse(f5, "4*T")}}, Poly::parse(f5, "T"));
    add("ex1.geK cyclotomic part", res.exact && res.ge_cyclotomic.same_field(e_expected));
    if (cfg.gamma_text.empty() || cfg.gamma_text == "2") {
      // with the default instance the local radical is sqrt(2/T)
      auto inf = infinity_data(k);
      bool uni = inf.uniformizer.has_value() && inf.uniformizer->first == f5->elem(2) &&
                 inf.uniformizer->second == 1;
      add("ex1.local uniformizer", uni);
      add("ex1.min positive degree",
          min_positive_degree({f5, 2, inf.uniformizer->first}) == 2);
    }
    rep.payload["result"]["example1"] = genus_result_to_json(res);
  }

  // Second instance: quartic radical k((2 T(T+1))^(1/4)) over F_5.
  {
    auto k = KummerExtension::make(f5, 4, f5->elem(2), Poly::parse(f5, "T^2+T"));
    require_shape(k.epsilon_class() % 2 != 0, "epsilon must not be an l-th power");
    auto res = genus_pipeline(k);
    add("ex2.degrees", res.e.degree() == 4 && res.genus_e.degree() == 8 &&
                           res.extended_genus_e.degree() == 16);
    add("ex2.[geE:gE] = e_inf ratio",
        res.extended_genus_e.ramification().e_infinity == 4 &&
            res.genus_e.ramification().e_infinity == 2);
    add("ex2.H order", res.h_order == 2, res.h_order.get_str());
    auto esubh = field_of_radicals({{2, RationalFn::parse(f5, "T^2+T")}},
                                   Poly::parse(f5, "T^2+T"));
    add("ex2.E^H", res.e_sub_h.same_field(esubh));
    add("ex2.rule", res.rule == ExactnessRule::kBoundsCoincide, exactness_rule_name(res.rule));
    add("ex2.geK = geE K",
        res.exact && res.ge_cyclotomic.same_field(res.extended_genus_e));
    auto recipe = q_coefficients(k);
    auto ge_expected = field_of_radicals(recipe.genus_generators, Poly::parse(f5, "T^2+T"));
    add("ex2.gE radical form", res.genus_e.same_field(ge_expected));
    add("ex2.constants degrees",
        res.constants_degree_gk == 2 && res.constants_degree_gek == 4);
    rep.payload["result"]["example2"] = genus_result_to_json(res);
    json rgen = json::array();
    for (const auto& gen : recipe.genus_generators)
      rgen.push_back({{"root", gen.root_exponent}, {"radicand", gen.radicand.format()}});
    rep.payload["result"]["example2"]["genus_radical_form"] = rgen;
  }

  rep.payload["result"]["checks"] = checks;
  rep.payload["result"]["all_pass"] = all_pass;
  if (!all_pass) rep.exit_code = kExitInvariant;
  return rep;
}

Report run_command(const std::string& name, const RunConfig& cfg) {
  auto t0 = Clock::now();
  Report rep;
  try {
    if (name == "unitgroup")
      rep = cmd_unitgroup(cfg);
    else if (name == "char")
      rep = cmd_char(cfg);
    else if (name == "extgenus")
      rep = cmd_extgenus(cfg);
    else if (name == "kummer")
      rep = cmd_kummer(cfg);
    else if (name == "oracle")
      rep = cmd_oracle(cfg);
    else if (name == "paper-examples")
      rep = cmd_paper_examples(cfg);
    else
      throw parse_error("unknown command: " + name);
  } catch (const parse_error& ex) {
    rep.payload["error"] = ex.what();
    rep.exit_code = kExitParse;
  } catch (const unsupported_error& ex) {
    rep.payload["error"] = ex.what();
    rep.exit_code = kExitUnsupported;
  } catch (const value_error& ex) {
    rep.payload["error"] = ex.what();
    rep.exit_code = kExitUnsupported;
  } catch (const invariant_error& ex) {
    rep.payload["error"] = ex.what();
    rep.exit_code = kExitInvariant;
  }
  rep.payload["schema_version"] = 1;
  rep.payload["command"] = name;
  rep.payload["inputs"] = echo_inputs(cfg);
  rep.payload["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  // serialization must round-trip losslessly
  check_invariant(json::parse(rep.payload.dump()) == rep.payload,
                  "report serialization does not round-trip");
  return rep;
}

}  // namespace fqgenus
