#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fqgenus/units.hpp"

using namespace fqgenus;

namespace {

Poly P(const FqFieldPtr& F, const std::string& s) { return Poly::parse(F, s); }

std::vector<Poly> all_units(const FqFieldPtr& F, const Poly& n) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n.degree(); ++i) total *= F->q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Poly u = Poly::from_index(F, idx, static_cast<unsigned>(n.degree()));
    if (poly_gcd(u, n).is_one()) out.push_back(u);
  }
  return out;
}

// Brute-force invariant factors from the multiplication table alone: the
// number of solutions of x^d = 1 pins down the abelian group type.
std::vector<mpz_class> brute_force_invariants(const FqFieldPtr& F, const Poly& n) {
  auto units = all_units(F, n);
  std::uint64_t order = units.size();
  std::map<std::uint64_t, std::uint64_t> count;  // d -> #solutions of x^d = 1
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= order; ++d)
    if (order % d == 0) divisors.push_back(d);
  for (auto d : divisors) {
    std::uint64_t c = 0;
    for (const auto& u : units)
      if (poly_powmod(u, mpz_class(static_cast<unsigned long>(d)), n).is_one()) ++c;
    count[d] = c;
  }
  // search over divisor chains d_1 | d_2 | ... with product = order
  std::vector<std::uint64_t> chain;
  std::vector<std::uint64_t> result;
  std::function<bool(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t remaining,
                                                              std::uint64_t max_next) -> bool {
    if (remaining == 1) {
      for (auto d : divisors) {
        std::uint64_t expect = 1;
        for (auto di : chain) expect *= std::gcd(d, di);
        if (expect != count[d]) return false;
      }
      result = chain;
      return true;
    }
    for (auto d : divisors) {
      if (d < 2 || d > max_next || remaining % d != 0) continue;
      // chain condition: previous entry must divide d... we build from the top
      if (!chain.empty() && chain.back() % d != 0) continue;
      chain.push_back(d);
      if (rec(remaining / d, d)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (order == 1) return {};
  bool ok = rec(order, order);
  REQUIRE(ok);
  std::vector<mpz_class> mods(result.rbegin(), result.rend());
  return mods;
}

}  // namespace

TEST_CASE("unit group structures match the spec instances") {
  auto F3 = FqField::make(3);
  auto g1 = ResidueUnitGroup::make(P(F3, "T"));
  CHECK(g1->group().mods() == std::vector<mpz_class>{2});
  CHECK(g1->decode({mpz_class(1)}) == P(F3, "2"));

  auto F2 = FqField::make(2);
  auto g2 = ResidueUnitGroup::make(P(F2, "T^2"));
  CHECK(g2->group().mods() == std::vector<mpz_class>{2});
  CHECK(g2->decode({mpz_class(1)}) == P(F2, "T+1"));

  auto g3 = ResidueUnitGroup::make(P(F3, "T^2"));
  CHECK(g3->group().mods() == std::vector<mpz_class>{6});
}

TEST_CASE("encode and decode") {
  auto F3 = FqField::make(3);
  auto g = ResidueUnitGroup::make(P(F3, "T"));
  CHECK(g->group().is_zero(g->encode(Poly::one(F3))));
  CHECK(g->encode(P(F3, "2")) == GroupElem{mpz_class(1)});

  auto F5 = FqField::make(5);
  auto g16 = ResidueUnitGroup::make(P(F5, "T^2+T"));
  CHECK(g16->order() == 16);
  for (const auto& u : all_units(F5, P(F5, "T^2+T"))) {
    auto e = g16->encode(u);
    CHECK(g16->decode(e) == u);
  }
  CHECK_THROWS_AS(g16->encode(P(F5, "T")), value_error);
}

TEST_CASE("encode is a homomorphism (exhaustive on small moduli)") {
  for (auto [q, ns] : std::vector<std::pair<std::uint64_t, std::vector<std::string>>>{
           {2, {"T^3", "T^2+T", "T^3+T"}},
           {3, {"T^2", "T^2+T", "T^3"}},
           {5, {"T^2+T", "T^2"}}}) {
    auto F = FqField::make(q);
    for (const auto& ns_text : ns) {
      Poly n = P(F, ns_text);
      auto g = ResidueUnitGroup::make(n);
      auto units = all_units(F, n);
      if (units.size() > 200) continue;
      for (const auto& u : units)
        for (const auto& v : units) {
          auto lhs = g->encode((u * v) % n);
          auto rhs = g->group().add(g->encode(u), g->encode(v));
          REQUIRE(lhs == rhs);
        }
    }
  }
}

TEST_CASE("invariant factors match brute force") {
  for (auto [q, ns] : std::vector<std::pair<std::uint64_t, std::vector<std::string>>>{
           {2, {"T", "T^2", "T^3", "T^2+T+1", "T^2+T", "T^4+T^2", "T^3+T^2"}},
           {3, {"T", "T^2", "T^3", "T^2+1", "T^2+T", "T^2+2*T"}},
           {5, {"T", "T^2", "T^2+T", "T^2+2", "T^3+T^2"}}}) {
    auto F = FqField::make(q);
    for (const auto& text : ns) {
      Poly n = P(F, text);
      auto g = ResidueUnitGroup::make(n);
      auto brute = brute_force_invariants(F, n);
      CHECK(g->group().mods() == brute);
      CHECK(g->order() == factorize(n).euler_phi());
    }
  }
}

TEST_CASE("crt components") {
  auto F5 = FqField::make(5);
  Poly n = P(F5, "T^2+T");
  auto g = ResidueUnitGroup::make(n);
  REQUIRE(g->factor_count() == 2);
  Poly pT = P(F5, "T"), pT1 = P(F5, "T+1");

  auto id = g->encode(Poly::one(F5));
  CHECK(g->local_group(0)->group().is_zero(g->crt_component(id, pT)));

  auto two = g->encode(P(F5, "2"));
  auto lg0 = g->local_group(g->factor_index(pT));
  auto lg1 = g->local_group(g->factor_index(pT1));
  CHECK(lg0->decode(g->crt_component(two, pT)) == P(F5, "2"));
  CHECK(lg1->decode(g->crt_component(two, pT1)) == P(F5, "2"));

  auto u = g->encode(P(F5, "T+3"));
  CHECK(lg0->decode(g->crt_component(u, pT)) == P(F5, "3"));
  CHECK(lg1->decode(g->crt_component(u, pT1)) == P(F5, "2"));

  CHECK_THROWS_AS(g->crt_component(u, P(F5, "T+2")), value_error);

  // the component map is an isomorphism onto the product (exhaustive)
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& unit : all_units(F5, n)) {
    auto e = g->encode(unit);
    auto c0 = g->crt_component(e, pT);
    auto c1 = g->crt_component(e, pT1);
    // reconstruct: CRT of the local decodes equals the unit
    Poly r0 = lg0->decode(c0), r1 = lg1->decode(c1);
    CHECK((unit % pT) == r0 % pT);
    CHECK((unit % pT1) == r1 % pT1);
    seen.emplace(r0.format(), r1.format());
    // component of a product is the product of components
    auto e2 = g->group().add(e, e);
    auto c0sq = g->crt_component(e2, pT);
    CHECK(c0sq == lg0->group().add(c0, c0));
  }
  CHECK(seen.size() == 16);  // bijective
}

TEST_CASE("fq_star_image") {
  auto F2 = FqField::make(2);
  CHECK(ResidueUnitGroup::make(P(F2, "T^2"))->fq_star_image().order() == 1);

  auto F3 = FqField::make(3);
  CHECK(ResidueUnitGroup::make(P(F3, "T^2"))->fq_star_image().order() == 2);

  auto F5 = FqField::make(5);
  auto g = ResidueUnitGroup::make(P(F5, "T"));
  CHECK(g->fq_star_image().order() == 4);
  CHECK(g->fq_star_image() == Subgroup::full(g->group()));
}

TEST_CASE("frobenius classes") {
  auto F5 = FqField::make(5);
  auto g = ResidueUnitGroup::make(P(F5, "T"));
  CHECK(g->group().is_zero(frobenius_class(*g, P(F5, "T+1"))));  // T+1 = 1 mod T
  auto fr = frobenius_class(*g, P(F5, "T+2"));
  CHECK(g->group().element_order(fr) == 4);
  CHECK_THROWS_AS(frobenius_class(*g, P(F5, "T")), value_error);
}

TEST_CASE("larger prime power moduli") {
  auto F2 = FqField::make(2);
  // (F_2[T]/T^4)^*: order 8, structure C_4 x C_2
  auto g = ResidueUnitGroup::make(P(F2, "T^4"));
  CHECK(g->order() == 8);
  CHECK(g->group().mods() == brute_force_invariants(F2, P(F2, "T^4")));

  // an irreducible quadratic: cyclic of order q^2 - 1
  auto F3 = FqField::make(3);
  auto g8 = ResidueUnitGroup::make(P(F3, "T^2+1"));
  CHECK(g8->group().mods() == std::vector<mpz_class>{8});
  for (const auto& u : all_units(F3, P(F3, "T^2+1"))) CHECK(g8->decode(g8->encode(u)) == u);
}
