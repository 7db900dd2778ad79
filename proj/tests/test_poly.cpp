#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fqgenus/poly.hpp"

using namespace fqgenus;

namespace {

Poly P(const FqFieldPtr& F, const std::string& s) { return Poly::parse(F, s); }

Poly random_poly(const FqFieldPtr& F, int max_deg, std::mt19937_64& rng) {
  std::uint64_t span = 1;
  for (int i = 0; i <= max_deg; ++i) span *= F->q();
  return Poly::from_index(F, rng() % span, static_cast<unsigned>(max_deg + 1));
}

}  // namespace

TEST_CASE("arithmetic basics") {
  auto F5 = FqField::make(5);
  auto a = P(F5, "T^2+4");       // T^2 - 1
  auto b = P(F5, "T+4");         // T - 1
  CHECK(poly_gcd(a, b) == b);    // common root 1
  auto [q, r] = P(F5, "T^3").divmod(P(F5, "T"));
  CHECK(q == P(F5, "T^2"));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(a.divmod(Poly::zero(F5)), value_error);

  auto F3 = FqField::make(3);
  auto [g, u, v] = poly_xgcd(P(F3, "T"), P(F3, "T+1"));
  CHECK(g.is_one());
  CHECK(u * P(F3, "T") + v * P(F3, "T+1") == Poly::one(F3));
}

TEST_CASE("sgn and star twist") {
  auto F5 = FqField::make(5);
  CHECK(P(F5, "T^2+1").sgn() == F5->one());
  CHECK(P(F5, "3*T+1").sgn() == F5->elem(3));
  CHECK(Poly::constant(F5, F5->elem(2)).sgn() == F5->elem(2));
  CHECK_THROWS_AS(Poly::zero(F5).sgn(), value_error);

  CHECK(P(F5, "T").star_twist() == P(F5, "4*T"));
  CHECK(P(F5, "T^2+T").star_twist() == P(F5, "T^2+T"));
  auto F2 = FqField::make(2);
  CHECK(P(F2, "T").star_twist() == P(F2, "T"));

  // sgn is multiplicative; star twist is an involution
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto a = random_poly(F5, 5, rng);
    auto b = random_poly(F5, 5, rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(F5->mul(a.sgn(), b.sgn()) == (a * b).sgn());
    CHECK(a.star_twist().star_twist() == a);
  }
}

TEST_CASE("factorization") {
  auto F2 = FqField::make(2);
  auto f = factorize(P(F2, "T^2+1"));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == P(F2, "T+1"));
  CHECK(f.factors[0].second == 2);

  auto F5 = FqField::make(5);
  auto g = factorize(P(F5, "T^2+T"));
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].first == P(F5, "T"));
  CHECK(g.factors[1].first == P(F5, "T+1"));

  auto F3 = FqField::make(3);
  CHECK(is_irreducible(P(F3, "T^2+1")));
  CHECK(!is_irreducible(P(F3, "T^2+2")));
}

TEST_CASE("factorization round-trips on random inputs") {
  std::mt19937_64 rng(20240901);
  for (auto [p, s] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {2, 3}}) {
    auto F = FqField::make(p, s);
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_poly(F, 12, rng);
      if (f.is_zero()) continue;
      auto fac = factorize(f);
      CHECK(fac.value() == f);  // recomposition is also checked internally
      for (const auto& [prime, e] : fac.factors) {
        CHECK(prime.is_monic());
        CHECK(e >= 1);
      }
      for (size_t i = 0; i + 1 < fac.factors.size(); ++i)
        CHECK(Poly::compare(fac.factors[i].first, fac.factors[i + 1].first) < 0);
    }
  }
}

TEST_CASE("euler phi") {
  auto F5 = FqField::make(5);
  CHECK(factorize(P(F5, "T")).euler_phi() == 4);
  CHECK(factorize(P(F5, "T^2+T")).euler_phi() == 16);
  auto F3 = FqField::make(3);
  CHECK(factorize(P(F3, "T^2")).euler_phi() == 6);

  // brute force: count units mod N
  for (auto pq : {2ull, 3ull, 5ull}) {
    auto F = FqField::make(pq);
    std::mt19937_64 rng(pq);
    for (int trial = 0; trial < 12; ++trial) {
      auto n = random_poly(F, 5, rng);
      if (n.degree() < 1) continue;
      auto nf = factorize(n);
      std::uint64_t count = 0;
      std::uint64_t total = 1;
      for (int i = 0; i < n.degree(); ++i) total *= F->q();
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        auto u = Poly::from_index(F, idx, static_cast<unsigned>(n.degree()));
        if (poly_gcd(u, n).is_one()) ++count;
      }
      CHECK(nf.euler_phi() == count);
    }
  }
}

TEST_CASE("irreducible enumeration") {
  auto F2 = FqField::make(2);
  IrreducibleEnum en(F2, 2);
  CHECK(en.next() == P(F2, "T"));
  CHECK(en.next() == P(F2, "T+1"));
  CHECK(en.next() == P(F2, "T^2+T+1"));
  CHECK(en.next().is_zero());

  auto F3 = FqField::make(3);
  IrreducibleEnum en3(F3, 1);
  CHECK(en3.next() == P(F3, "T"));
  CHECK(en3.next() == P(F3, "T+1"));
  CHECK(en3.next() == P(F3, "T+2"));
  CHECK(en3.next().is_zero());
}

TEST_CASE("text grammar round trip") {
  auto F5 = FqField::make(5);
  CHECK(P(F5, "T^3+2*T+4").format() == "T^3+2*T+4");
  CHECK(P(F5, "0").is_zero());
  CHECK(Poly::zero(F5).format() == "0");
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(F5, 6, rng);
    CHECK(Poly::parse(F5, f.format()) == f);
  }
  auto F9 = FqField::make(3, 2);
  auto f = Poly(F9, {F9->elem(4), F9->elem(2), F9->elem(3)});
  CHECK(f.format() == "g*T^2+2*T+(g+1)");
  CHECK(Poly::parse(F9, f.format()) == f);
}

TEST_CASE("rational functions") {
  auto F5 = FqField::make(5);
  auto r = RationalFn::make(P(F5, "T+1"), P(F5, "2*T"));
  // denominator is made monic, unit absorbed into the numerator
  CHECK(r.den == P(F5, "T"));
  CHECK(r.num == P(F5, "3*T+3"));
  CHECK(r.sign_at_infinity() == F5->elem(3));
  CHECK(r.v_infty() == 0);
  CHECK(RationalFn::parse(F5, "(T+1)/T").format() == "(T+1)/T");
  CHECK(RationalFn::parse(F5, "T^2").den.is_one());
  auto prod = RationalFn::parse(F5, "(T+1)/T") * RationalFn::parse(F5, "T/(T+1)");
  CHECK(prod.num.is_one());
  CHECK(prod.den.is_one());
  CHECK_THROWS_AS(RationalFn::make(P(F5, "T"), Poly::zero(F5)), value_error);
}
