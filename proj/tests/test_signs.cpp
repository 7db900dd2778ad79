#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fqgenus/signs.hpp"

using namespace fqgenus;

namespace {

Poly P(const FqFieldPtr& F, const std::string& s) { return Poly::parse(F, s); }

RationalFn random_rational(const FqFieldPtr& F, std::mt19937_64& rng) {
  auto rand_poly = [&](int max_deg) {
    std::uint64_t span = 1;
    for (int i = 0; i <= max_deg; ++i) span *= F->q();
    return Poly::from_index(F, rng() % span, static_cast<unsigned>(max_deg + 1));
  };
  Poly n(F), d(F);
  while (n.is_zero()) n = rand_poly(5);
  while (d.is_zero()) d = rand_poly(4);
  return RationalFn::make(n, d);
}

}  // namespace

TEST_CASE("sign of rational functions") {
  auto F5 = FqField::make(5);
  CHECK(sign_infty(RationalFn::parse(F5, "1/T")) == F5->one());
  CHECK(sign_infty(RationalFn::parse(F5, "3*T+1")) == F5->elem(3));
  CHECK(sign_infty(RationalFn::parse(F5, "(3*T^2+1)/(T+2)")) == F5->elem(3));
  CHECK_THROWS_AS(sign_infty(RationalFn::from_poly(Poly::zero(F5))), value_error);
}

TEST_CASE("sign via the local decomposition agrees with the quotient rule") {
  auto F5 = FqField::make(5);
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 500; ++i) {
    auto x = random_rational(F5, rng);
    auto loc = InfinityLocalElem::from_rational(x, 8);
    CHECK(sign_infty(loc) == sign_infty(x));
    CHECK(loc.valuation == x.v_infty());
  }
}

TEST_CASE("Laurent expansion cross-check") {
  auto F5 = FqField::make(5);
  // (3T^2+1)/(T+2) = 3T - 6 + ... : sign 3, valuation -1
  auto x = RationalFn::parse(F5, "(3*T^2+1)/(T+2)");
  auto loc = InfinityLocalElem::from_rational(x, 3);
  CHECK(loc.valuation == -1);
  CHECK(loc.sign == F5->elem(3));
  // reconstruct to the stated precision: x = pi^-1 * 3 * (1 + c1 pi + ...)
  // multiply out and compare with the product form  num = den * expansion
  // at the first few coefficients
  // expansion of (T+2)*3T*(1+c1/T+c2/T^2+c3/T^3) should match 3T^2+1
  Poly t = P(F5, "T");
  // build 3T^3? work instead with: num/den one-unit = computed series
  // check multiplicativity instead: sign and valuation already fixed; here
  // verify the first series coefficient c1 satisfies num = den*3T*(1+c1/T+..)
  // coefficient comparison at T^1: 0 = 2*3 + 3*c1 -> c1 = -2 = 3
  REQUIRE(loc.one_unit.size() >= 1);
  CHECK(loc.one_unit[0] == F5->elem(3));
}

TEST_CASE("phi_infinity is multiplicative (seeded random pairs)") {
  for (std::uint64_t q : {3ull, 5ull}) {
    auto F = FqField::make(q);
    std::mt19937_64 rng(1000 + q);
    for (int i = 0; i < 2000; ++i) {
      auto x = random_rational(F, rng);
      auto y = random_rational(F, rng);
      CHECK(sign_infty(x * y) == F->mul(sign_infty(x), sign_infty(y)));
    }
  }
}

TEST_CASE("kernel of phi_infinity") {
  auto F5 = FqField::make(5);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto x = random_rational(F5, rng);
    auto loc = InfinityLocalElem::from_rational(x, 6);
    bool sign_one = sign_infty(x) == F5->one();
    // sign 1 iff x = pi^n * one-unit
    CHECK(sign_one == (loc.sign == F5->one()));
  }
  CHECK(is_totally_positive(RationalFn::parse(F5, "(T+1)/T")));
  CHECK(!is_totally_positive(RationalFn::parse(F5, "2*T")));
  CHECK(is_totally_positive(RationalFn::parse(F5, "(2*T+1)/(2*T)")));
}

TEST_CASE("local Kummer signs (Example shape: q=5, ell=2, delta=2)") {
  auto F5 = FqField::make(5);
  LocalKummerAmbient amb{F5, 2, F5->elem(2)};

  // delta^{-1} Pi^ell is in the kernel
  LocalKummerElem x1{2, F5->inv(F5->elem(2)), {}};
  CHECK(sign_local_kummer(amb, x1) == F5->one());

  // Pi itself: value (-1)*2 = -2 = 3
  LocalKummerElem x2{1, F5->one(), {}};
  CHECK(sign_local_kummer(amb, x2) == F5->elem(3));

  // constants with xi^ell = 1 at m = 0
  LocalKummerElem x3{0, F5->elem(4), {}};  // 4^2 = 16 = 1
  CHECK(sign_local_kummer(amb, x3) == F5->one());
}

TEST_CASE("sign_local_kummer is a homomorphism in (m, xi)") {
  auto F5 = FqField::make(5);
  LocalKummerAmbient amb{F5, 2, F5->elem(2)};
  int mspan = amb.ell * static_cast<int>(F5->q() - 1);
  for (int m1 = 0; m1 < mspan; ++m1)
    for (std::uint64_t x1 = 1; x1 < 5; ++x1)
      for (int m2 = 0; m2 < mspan; ++m2)
        for (std::uint64_t x2 = 1; x2 < 5; ++x2) {
          auto a = LocalKummerElem{m1, F5->elem(x1), {}};
          auto b = LocalKummerElem{m2, F5->elem(x2), {}};
          auto ab = LocalKummerElem{m1 + m2, F5->mul(F5->elem(x1), F5->elem(x2)), {}};
          REQUIRE(sign_local_kummer(amb, ab) ==
                  F5->mul(sign_local_kummer(amb, a), sign_local_kummer(amb, b)));
        }
}

TEST_CASE("min positive degree") {
  auto F5 = FqField::make(5);
  CHECK(min_positive_degree({F5, 2, F5->elem(2)}) == 2);  // -2 = 3 is a nonsquare
  CHECK(min_positive_degree({F5, 2, F5->elem(1)}) == 1);  // -1 = 4 = 2^2 is a square
  auto F3 = FqField::make(3);
  CHECK(min_positive_degree({F3, 2, F3->elem(2)}) == 1);  // -2 = 1
}

TEST_CASE("norm compatibility (closed form)") {
  auto F5 = FqField::make(5);
  LocalKummerAmbient amb{F5, 2, F5->elem(2)};
  CHECK(norm_sign_compat(amb, LocalKummerElem{0, F5->one(), {}}));
  // x = Pi: N(x) = -2 pi, both signs 3
  auto nx = norm_to_base(amb, LocalKummerElem{1, F5->one(), {}});
  CHECK(nx.sign == F5->elem(3));
  CHECK(nx.valuation == 1);
  CHECK(norm_sign_compat(amb, LocalKummerElem{1, F5->one(), {}}));
  // constants: N(xi) = xi^ell
  for (std::uint64_t xi = 1; xi < 5; ++xi)
    CHECK(norm_sign_compat(amb, LocalKummerElem{0, F5->elem(xi), {}}));
  // dense sample
  for (int m = -6; m <= 6; ++m)
    for (std::uint64_t xi = 1; xi < 5; ++xi)
      CHECK(norm_sign_compat(amb, LocalKummerElem{m, F5->elem(xi), {}}));
}

TEST_CASE("sig sizes and the divisibility law") {
  auto F5 = FqField::make(5);
  CHECK(sig_size(F5, {4}) == 4);  // base field: image is all of F_5^*
  // Example shape: image of phi_{K_inf} is all of F_5^* (order 4)
  LocalKummerAmbient amb{F5, 2, F5->elem(2)};
  CHECK(local_kummer_image_order(amb) == 4);
  CHECK(sig_size(F5, {local_kummer_image_order(amb)}) == 4);
  CHECK(sig_size(F5, {2, 4}) == 8);
  CHECK_THROWS_AS(sig_size(F5, {3}), invariant_error);
  auto F2 = FqField::make(2);
  CHECK(sig_size(F2, {1, 1}) == 1);
}
