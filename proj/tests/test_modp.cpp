#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "picard/modp_orbits.hpp"

using namespace picard;

// Fields are chosen to give each prime the wanted splitting behavior:
// d=1 splits p ≡ 1 (mod 4) and keeps p ≡ 3 (mod 4) inert; d=3 splits 7;
// d=7 splits 11; d=5/7/3 ramify their own prime.

TEST_CASE("split primes: counts and orbit ladder (1, 2, 2, 3)") {
  struct Case {
    i64 d, p;
  };
  for (Case c : {Case{1, 5}, Case{3, 7}, Case{7, 11}, Case{1, 13}}) {
    Field f = make_field(c.d);
    REQUIRE(splitting_type(f, c.p) == SplittingType::Split);
    CAPTURE(c.d);
    CAPTURE(c.p);
    CHECK(modp_isotropic_count(f, c.p) == c.p * c.p + c.p + 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) == 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::P1) == 2);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::P2) == 2);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) == 3);
  }
}

TEST_CASE("inert primes: counts and orbits (1, 2)") {
  struct Case {
    i64 d, p;
  };
  for (Case c : {Case{1, 3}, Case{1, 7}, Case{2, 5}}) {
    Field f = make_field(c.d);
    REQUIRE(splitting_type(f, c.p) == SplittingType::Inert);
    CAPTURE(c.d);
    CAPTURE(c.p);
    CHECK(modp_isotropic_count(f, c.p) == c.p * c.p * c.p + 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) == 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) == 2);
  }
}

TEST_CASE("ramified primes: counts and orbits (1, 2)") {
  struct Case {
    i64 d, p;
  };
  for (Case c : {Case{5, 5}, Case{7, 7}, Case{3, 3}}) {
    Field f = make_field(c.d);
    REQUIRE(splitting_type(f, c.p) == SplittingType::Ramified);
    CAPTURE(c.d);
    CAPTURE(c.p);
    CHECK(modp_isotropic_count(f, c.p) == c.p + 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) == 1);
    CHECK(modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) == 2);
  }
}

TEST_CASE("input validation") {
  Field f = make_field(1);
  CHECK_THROWS_AS(modp_isotropic_count(f, 2), std::invalid_argument);
  CHECK_THROWS_AS(modp_isotropic_count(f, 9), std::invalid_argument);
  CHECK_THROWS_AS(modp_isotropic_count(f, 101),
                  std::invalid_argument);  // beyond default bound
  CHECK(modp_isotropic_count(f, 101, 150) == 101 * 101 + 101 + 1);
  // P1/P2 only exist at split primes
  CHECK_THROWS_AS(modp_parabolic_orbits(f, 3, ModPSubgroup::P1),
                  std::invalid_argument);
  Field f5 = make_field(5);
  CHECK_THROWS_AS(modp_parabolic_orbits(f5, 5, ModPSubgroup::P2),
                  std::invalid_argument);
}

TEST_CASE("model reports splitting type") {
  Field f = make_field(1);
  CHECK(modp_model(f, 5).type == SplittingType::Split);
  CHECK(modp_model(f, 7).type == SplittingType::Inert);
  CHECK(modp_model(f, 13).isotropic_count == 183);
}
