#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fqgenus/characters.hpp"

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

}  // namespace

TEST_CASE("unity roots") {
  CHECK(UnityRoot::make(2, 4) == UnityRoot{1, 2});
  CHECK(UnityRoot::make(4, 4) == UnityRoot{0, 1});
  CHECK(UnityRoot::make(-1, 4) == UnityRoot{3, 4});
  CHECK((UnityRoot::make(1, 4) + UnityRoot::make(1, 4)) == UnityRoot{1, 2});
  CHECK(UnityRoot::make(1, 3).index_mod(6) == 2);
  CHECK_THROWS_AS(UnityRoot::make(1, 3).index_mod(4), value_error);
}

TEST_CASE("evaluation basics") {
  auto F5 = FqField::make(5);
  auto g = ResidueUnitGroup::shared(P(F5, "T"));

  DirichletCharacter triv(g, GroupElem{mpz_class(0)});
  CHECK(triv.is_trivial());
  for (const auto& u : all_units(F5, P(F5, "T")))
    if (!u.is_zero()) CHECK(triv.evaluate(u).is_zero());

  DirichletCharacter chi(g, GroupElem{mpz_class(1)});
  CHECK(chi.order() == 4);
  UnityRoot v = chi.evaluate(P(F5, "2"));
  CHECK(v.order() == 4);  // 2 generates the units mod T

  // chi(B) + chi(B^-1) = 0
  for (const auto& u : all_units(F5, P(F5, "T"))) {
    auto e = g->encode(u);
    CHECK((chi.evaluate_class(e) + chi.evaluate_class(g->group().neg(e))).is_zero());
  }
  CHECK_THROWS_AS(chi.evaluate(P(F5, "T")), value_error);
}

TEST_CASE("characters are multiplicative") {
  auto F3 = FqField::make(3);
  Poly n = P(F3, "T^2+T");
  auto g = ResidueUnitGroup::shared(n);
  for (const auto& cvec : g->group().all_elements()) {
    DirichletCharacter chi(g, cvec);
    for (const auto& u : all_units(F3, n))
      for (const auto& v : all_units(F3, n)) {
        auto lhs = chi.evaluate((u * v) % n);
        auto rhs = chi.evaluate(u) + chi.evaluate(v);
        REQUIRE(lhs == rhs);
      }
  }
}

TEST_CASE("component product identity, exhaustive") {
  auto F5 = FqField::make(5);
  Poly n = P(F5, "T^2+T");
  auto g = ResidueUnitGroup::shared(n);
  Poly pT = P(F5, "T"), pT1 = P(F5, "T+1");
  for (const auto& cvec : g->group().all_elements()) {
    DirichletCharacter chi(g, cvec);
    auto cT = chi.component(pT);
    auto cT1 = chi.component(pT1);
    mpz_class l = lcm(cT.order(), cT1.order());
    CHECK(chi.order() == l);  // ord(chi) = lcm of component orders
    for (const auto& u : all_units(F5, n)) {
      auto lhs = chi.evaluate(u);
      auto rhs = cT.evaluate(u % pT) + cT1.evaluate(u % pT1);
      REQUIRE(lhs == rhs);
    }
  }
  // component of the trivial character is trivial
  DirichletCharacter triv(g, g->group().zero());
  CHECK(triv.component(pT).is_trivial());
}

TEST_CASE("conductors") {
  auto F3 = FqField::make(3);
  auto g = ResidueUnitGroup::shared(P(F3, "T^2"));  // C_6
  DirichletCharacter triv(g, g->group().zero());
  CHECK(triv.conductor().is_one());

  // order-2 character: trivial on the one-units (which have order 3),
  // so the conductor drops to T
  GroupElem order2 = g->group().smul(3, GroupElem{mpz_class(1)});
  DirichletCharacter chi2(g, order2);
  CHECK(chi2.order() == 2);
  auto cond = chi2.conductor();
  REQUIRE(cond.factors.size() == 1);
  CHECK(cond.factors[0].first == P(F3, "T"));
  CHECK(cond.factors[0].second == 1);

  // order-3 character is nontrivial exactly on the one-units: conductor T^2
  GroupElem order3 = g->group().smul(2, GroupElem{mpz_class(1)});
  DirichletCharacter chi3(g, order3);
  auto cond3 = chi3.conductor();
  REQUIRE(cond3.factors.size() == 1);
  CHECK(cond3.factors[0].second == 2);

  // faithful character mod an irreducible P has conductor P
  auto F5 = FqField::make(5);
  auto gp = ResidueUnitGroup::shared(P(F5, "T+1"));
  DirichletCharacter faithful(gp, GroupElem{mpz_class(1)});
  auto condf = faithful.conductor();
  REQUIRE(condf.factors.size() == 1);
  CHECK(condf.factors[0].first == P(F5, "T+1"));

  // conductor(chi) = prod conductor(chi_P) on a two-prime modulus
  Poly n2 = P(F5, "T^2+T");
  auto g2 = ResidueUnitGroup::shared(n2);
  for (const auto& cvec : g2->group().all_elements()) {
    DirichletCharacter chi(g2, cvec);
    auto c = chi.conductor();
    auto cT = chi.component(P(F5, "T")).conductor();
    auto cT1 = chi.component(P(F5, "T+1")).conductor();
    CHECK(c.value() == (cT.value() * cT1.value()));
  }
}

TEST_CASE("reduce and inflate round trips") {
  auto F3 = FqField::make(3);
  auto big = ResidueUnitGroup::shared(P(F3, "T^2"));
  auto small = ResidueUnitGroup::shared(P(F3, "T"));
  GroupElem order2 = big->group().smul(3, GroupElem{mpz_class(1)});
  DirichletCharacter chi2(big, order2);
  auto down = chi2.reduce_to(small);
  CHECK(down.order() == 2);
  CHECK(down.inflate_to(big) == chi2);
  // the order-3 character does not factor through T
  GroupElem order3 = big->group().smul(2, GroupElem{mpz_class(1)});
  CHECK_THROWS_AS(DirichletCharacter(big, order3).reduce_to(small), value_error);
}

TEST_CASE("restriction to constants") {
  auto F5 = FqField::make(5);
  auto g = ResidueUnitGroup::shared(P(F5, "T"));
  DirichletCharacter triv(g, g->group().zero());
  CHECK(triv.restriction_index() == 0);
  DirichletCharacter chi(g, GroupElem{mpz_class(1)});
  // units mod T are exactly the constants, so the restriction has order 4
  std::int64_t r = chi.restriction_index();
  CHECK(std::gcd(r, std::int64_t(4)) == 1);

  // lambda -> chi(lambda): check homomorphism over F_q^*
  for (std::uint64_t a = 1; a < 5; ++a)
    for (std::uint64_t b = 1; b < 5; ++b) {
      auto lhs = chi.at_constant(F5->mul(F5->elem(a), F5->elem(b)));
      auto rhs = chi.at_constant(F5->elem(a)) + chi.at_constant(F5->elem(b));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("character groups") {
  auto F5 = FqField::make(5);
  Poly n = P(F5, "T^2+T");
  auto g = ResidueUnitGroup::shared(n);
  auto full = CharacterGroup::full_dual(g);
  CHECK(full.order() == 16);
  // projections surject: X_P is the full local dual
  auto xt = full.p_component_group(P(F5, "T"));
  CHECK(xt.order() == 4);
  CHECK(xt.subgroup() == Subgroup::full(xt.structure()->group()));

  auto trivial = CharacterGroup::trivial(g);
  CHECK(trivial.p_component_group(P(F5, "T")).order() == 1);
  CHECK(trivial.restriction_order() == 1);
  CHECK(full.restriction_order() == 4);

  // group generated by a character contains its powers
  DirichletCharacter chi(g, g->group().reduce({mpz_class(1), mpz_class(1)}));
  auto cyc = CharacterGroup::generated_by({chi});
  CHECK(cyc.order() == chi.order());
  CHECK(cyc.contains(chi.power(2)));
  CHECK(full.contains_group(cyc));
}

TEST_CASE("restriction group order divides q - 1") {
  for (std::uint64_t q : {2ull, 3ull, 5ull}) {
    auto F = FqField::make(q);
    for (const std::string& text : {"T", "T^2", "T^2+T"}) {
      auto g = ResidueUnitGroup::shared(P(F, text));
      auto full = CharacterGroup::full_dual(g);
      mpz_class e = full.restriction_order();
      CHECK(mpz_class(static_cast<unsigned long>(q - 1)) % e == 0);
    }
  }
}
