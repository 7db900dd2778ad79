#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqgenus/fq.hpp"

using namespace fqgenus;

TEST_CASE("prime field arithmetic") {
  auto F5 = FqField::make(5);
  CHECK(F5->mul(F5->elem(2), F5->elem(3)) == F5->one());
  CHECK(F5->inv(F5->elem(4)) == F5->elem(4));
  CHECK(F5->add(F5->elem(3), F5->elem(4)) == F5->elem(2));
  CHECK(F5->pow(F5->elem(2), -1) == F5->elem(3));
  CHECK_THROWS_AS(F5->inv(F5->zero()), value_error);
}

TEST_CASE("extension field F9 = F3[g]/(g^2+1)") {
  auto F9 = FqField::make(3, 2);
  // built-in modulus is the smallest irreducible: g^2 + 1
  CHECK(F9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  FqElem g = F9->elem(3);
  CHECK(F9->mul(g, g) == F9->elem(2));  // g^2 = -1 = 2
  // every nonzero x satisfies x^(q-1) = 1
  for (std::uint64_t i = 1; i < 9; ++i) CHECK(F9->pow(F9->elem(i), 8) == F9->one());
}

TEST_CASE("primitive roots are deterministic and minimal") {
  CHECK(FqField::make(2)->primitive_root().v == 1);
  CHECK(FqField::make(3)->primitive_root().v == 2);
  CHECK(FqField::make(5)->primitive_root().v == 2);
  auto F7 = FqField::make(7);
  CHECK(F7->primitive_root().v == 3);
  CHECK(F7->multiplicative_order(F7->primitive_root()) == 6);
}

TEST_CASE("lth power classes in F5") {
  auto F5 = FqField::make(5);
  CHECK(F5->lth_power_class(F5->elem(4), 2) == 0);  // 4 = 2^2
  CHECK(F5->lth_power_class(F5->elem(2), 2) == 1);  // squares are {1,4}
  CHECK(F5->lth_power_class(F5->one(), 2) == 0);
  CHECK(F5->lth_power_class(F5->one(), 4) == 0);
  CHECK_THROWS_AS(F5->lth_power_class(F5->elem(2), 3), unsupported_error);
}

TEST_CASE("lth_power_class is a homomorphism with kernel the l-th powers") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    for (unsigned s = 1; s <= 2; ++s) {
      auto F = FqField::make(p, s);
      if (F->q() > 49) continue;
      std::uint64_t q1 = F->q() - 1;
      for (std::uint64_t l = 1; l <= q1; ++l) {
        if (q1 % l != 0) continue;
        for (std::uint64_t x = 1; x < F->q(); ++x)
          for (std::uint64_t y = 1; y < F->q(); ++y) {
            auto a = F->elem(x), b = F->elem(y);
            auto lhs = F->lth_power_class(F->mul(a, b), static_cast<std::int64_t>(l));
            auto rhs = (F->lth_power_class(a, static_cast<std::int64_t>(l)) +
                        F->lth_power_class(b, static_cast<std::int64_t>(l))) %
                       static_cast<std::int64_t>(l);
            REQUIRE(lhs == rhs);
          }
        // kernel check
        for (std::uint64_t x = 1; x < F->q(); ++x) {
          bool is_power = false;
          for (std::uint64_t y = 1; y < F->q(); ++y)
            if (F->pow(F->elem(y), static_cast<std::int64_t>(l)) == F->elem(x)) is_power = true;
          bool class_zero = F->lth_power_class(F->elem(x), static_cast<std::int64_t>(l)) == 0;
          REQUIRE(is_power == class_zero);
        }
      }
    }
  }
}

TEST_CASE("mu_index") {
  auto F5 = FqField::make(5);
  CHECK(F5->mu_index(F5->one(), 2) == 0);
  CHECK(F5->mu_index(F5->elem(4), 2) == 1);  // -1 = 4
  CHECK(F5->mu_index(F5->elem(2), 4) == 1);  // beta = 2, zeta = 2
  CHECK_THROWS_AS(F5->mu_index(F5->elem(2), 2), value_error);
  // additivity
  auto F = FqField::make(13);
  std::int64_t l = 4;  // 4 | 12
  FqElem zeta = F->pow(F->primitive_root(), (13 - 1) / l);
  for (std::int64_t a = 0; a < l; ++a)
    for (std::int64_t b = 0; b < l; ++b) {
      auto prod = F->mul(F->pow(zeta, a), F->pow(zeta, b));
      CHECK(F->mu_index(prod, l) == (a + b) % l);
    }
}

TEST_CASE("x^(q-1) = 1 exhaustively for q <= 49") {
  for (auto [p, s] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}, {7, 2}, {2, 4}, {2, 5}, {3, 3}}) {
    auto F = FqField::make(p, s);
    for (std::uint64_t x = 1; x < F->q(); ++x)
      REQUIRE(F->pow(F->elem(x), static_cast<std::int64_t>(F->q() - 1)) == F->one());
  }
}

TEST_CASE("field literals") {
  auto F5 = FqField::make(5);
  CHECK(F5->parse("3") == F5->elem(3));
  CHECK(F5->format(F5->elem(3)) == "3");
  auto F9 = FqField::make(3, 2);
  CHECK(F9->parse("g") == F9->elem(3));
  CHECK(F9->parse("g+1") == F9->elem(4));
  CHECK(F9->parse("2*g+2") == F9->elem(8));
  CHECK(F9->format(F9->elem(8)) == "2*g+2");
  CHECK(F9->parse(F9->format(F9->elem(7))) == F9->elem(7));
  auto F8 = FqField::make(2, 3);
  CHECK(F8->parse("g^2+1") == F8->elem(5));
  CHECK_THROWS_AS(F5->parse("g"), parse_error);
  CHECK_THROWS_AS(F5->parse(""), parse_error);
}

TEST_CASE("explicit modulus") {
  // F9 as F3[g]/(g^2 + g + 2) instead of the default
  auto F9 = FqField::make(3, 2, {2, 1, 1});
  FqElem g = F9->elem(3);
  // g^2 = -g - 2 = 2g + 1
  CHECK(F9->mul(g, g) == F9->elem(3 * 2 + 1));
  CHECK_THROWS_AS(FqField::make(3, 2, {0, 0, 1}), value_error);  // g^2 reducible
  CHECK_THROWS_AS(FqField::make(4, 1, {}), value_error);         // 4 not prime
}
