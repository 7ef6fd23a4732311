#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "picard/ideals.hpp"
#include "oracles.hpp"

using namespace picard;

namespace {

FieldElement omega(const Field& f) { return FieldElement(f, 0, 1); }

// Deterministic small random ideal: a product of small primes above random
// rational primes, occasionally scaled by a principal element.
FractionalIdeal random_ideal(const Field& f, std::mt19937_64& rng) {
  FractionalIdeal I = FractionalIdeal::unit(f);
  int np = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < np; ++i) {
    i64 p = 2 + static_cast<i64>(rng() % 30);
    while (!is_prime(p)) ++p;
    I = ideal_mul(I, FractionalIdeal::prime_above(f, p));
  }
  if (rng() % 2) {
    FieldElement x(f, static_cast<i64>(rng() % 9) + 1,
                   static_cast<i64>(rng() % 5));
    if (!x.is_zero()) I = ideal_mul(I, FractionalIdeal::principal(x));
  }
  if (rng() % 3 == 0) I = ideal_inverse(I);
  return I;
}

}  // namespace

TEST_CASE("unit ideal and principal ideals") {
  Field f = make_field(5);
  FractionalIdeal one = FractionalIdeal::unit(f);
  CHECK(ideal_norm(one) == 1);
  CHECK(FractionalIdeal::from_generators(f, {FieldElement(f, 1, 0)}) == one);
  auto unit_gen = principal_generator(one);
  REQUIRE(unit_gen.has_value());
  CHECK(elem_norm(*unit_gen) == 1);

  FieldElement x(f, 2, 3);
  FractionalIdeal I = FractionalIdeal::principal(x);
  CHECK(ideal_norm(I) == elem_norm(x));
}

TEST_CASE("from_generators rejects the zero module") {
  Field f = make_field(5);
  CHECK_THROWS_AS(
      FractionalIdeal::from_generators(f, {FieldElement(f, 0, 0)}),
      std::invalid_argument);
}

TEST_CASE("the prime above 2 in Q(sqrt(-5))") {
  Field f = make_field(5);
  FieldElement two(f, 2, 0), onepw(f, 1, 1);
  FractionalIdeal P2 = FractionalIdeal::from_generators(f, {two, onepw});
  CHECK(ideal_norm(P2) == 2);
  CHECK(P2.scale() == 1);
  CHECK(P2.basis_a() == 2);
  CHECK(P2.basis_b() == 1);
  CHECK(P2 == FractionalIdeal::prime_above(f, 2));

  // non-principal: no element of norm 2 exists (exhaustive search)
  bool norm2 = false;
  for (i64 a = -3; a <= 3; ++a) {
    for (i64 b = -3; b <= 3; ++b) {
      if (elem_norm(FieldElement(f, a, b)) == 2) norm2 = true;
    }
  }
  CHECK_FALSE(norm2);
  CHECK_FALSE(is_principal(P2));

  // P2^2 = (2)
  FractionalIdeal sq = ideal_mul(P2, P2);
  CHECK(sq == FractionalIdeal::principal(two));
  auto gen = principal_generator(sq);
  REQUIRE(gen.has_value());
  CHECK(elem_norm(*gen) == 4);
}

TEST_CASE("membership brute-force cross-check") {
  Field f = make_field(5);
  FractionalIdeal P2 = FractionalIdeal::prime_above(f, 2);
  // P2 = {x + y w : x ≡ y (mod 2)} — check against ideal_contains on a box
  for (i64 a = -4; a <= 4; ++a) {
    for (i64 b = -4; b <= 4; ++b) {
      FieldElement x(f, a, b);
      bool expected = mod_floor(a - b, 2) == 0;
      CHECK(ideal_contains(P2, x) == expected);
    }
  }
}

TEST_CASE("group laws on random ideals") {
  std::mt19937_64 rng(5150);
  int fields_done = 0;
  for (i64 d = 1; fields_done < 10; ++d) {
    if (!is_squarefree(d)) continue;
    ++fields_done;
    Field f = make_field(d);
    FractionalIdeal one = FractionalIdeal::unit(f);
    for (int i = 0; i < 200; ++i) {
      FractionalIdeal A = random_ideal(f, rng);
      FractionalIdeal B = random_ideal(f, rng);
      FractionalIdeal C = random_ideal(f, rng);
      CHECK(ideal_mul(A, one) == A);
      CHECK(ideal_mul(A, B) == ideal_mul(B, A));
      CHECK(ideal_mul(ideal_mul(A, B), C) == ideal_mul(A, ideal_mul(B, C)));
      CHECK(ideal_mul(A, ideal_inverse(A)) == one);
      CHECK(ideal_inverse(ideal_inverse(A)) == A);
      CHECK(ideal_norm(ideal_mul(A, B)) == ideal_norm(A) * ideal_norm(B));
    }
  }
}

TEST_CASE("principality of products of principals, with witnesses") {
  std::mt19937_64 rng(77);
  for (i64 d : {1, 2, 5, 7, 23}) {
    Field f = make_field(d);
    for (int i = 0; i < 20; ++i) {
      FieldElement x(f, static_cast<i64>(rng() % 9) + 1,
                     static_cast<i64>(rng() % 6) - 3);
      FieldElement y(f, static_cast<i64>(rng() % 9) + 1,
                     static_cast<i64>(rng() % 6) - 3);
      if (x.is_zero() || y.is_zero()) continue;
      FractionalIdeal I =
          ideal_mul(FractionalIdeal::principal(x), FractionalIdeal::principal(y));
      auto gen = principal_generator(I);
      REQUIRE(gen.has_value());
      CHECK(FractionalIdeal::principal(*gen) == I);
      CHECK(elem_norm(*gen) == elem_norm(x) * elem_norm(y));
    }
  }
}

TEST_CASE("ideal_to_form_class basics") {
  Field f = make_field(5);
  CHECK(ideal_to_form_class(FractionalIdeal::unit(f)).is_principal());
  FractionalIdeal P2 = FractionalIdeal::prime_above(f, 2);
  CHECK(ideal_to_form_class(P2).form() == QuadraticForm{2, 2, 3});

  // class invariance under principal rescaling
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 100; ++i) {
    i64 na = static_cast<i64>(rng() % 17) - 8;
    i64 nb = static_cast<i64>(rng() % 17) - 8;
    i64 da = static_cast<i64>(rng() % 5) + 1;
    if (na == 0 && nb == 0) continue;
    FieldElement lam(f, mpq_class(na, da), mpq_class(nb));
    FractionalIdeal J = ideal_mul(P2, FractionalIdeal::principal(lam));
    CHECK(ideal_to_form_class(J) == ideal_to_form_class(P2));
  }
}

TEST_CASE("ideal_to_form_class is a homomorphism onto the form group") {
  std::mt19937_64 rng(424242);
  for (i64 d : {5, 23, 14, 199}) {
    Field f = make_field(d);
    for (int i = 0; i < 50; ++i) {
      FractionalIdeal A = random_ideal(f, rng);
      FractionalIdeal B = random_ideal(f, rng);
      CHECK(ideal_to_form_class(ideal_mul(A, B)) ==
            compose(ideal_to_form_class(A), ideal_to_form_class(B)));
    }
  }
}

TEST_CASE("is_principal agrees with the principal form, small norms") {
  // All integral ideals of norm <= 50 for every fundamental |disc| <= 200.
  for (i64 n = 3; n <= 200; ++n) {
    if (!is_fundamental_discriminant(-n)) continue;
    Field f = field_from_abs_disc(n);
    for (i64 e = 1; e * e <= 50; ++e) {
      for (i64 a = 1; e * e * a <= 50; ++a) {
        for (i64 b = 0; b < a; ++b) {
          FieldElement bw(f, b, 1);
          if (elem_norm(bw).get_num() % a != 0) continue;
          std::vector<FieldElement> gens;
          gens.emplace_back(f, e * a, 0);
          gens.emplace_back(f, e * b, e);
          FractionalIdeal I = FractionalIdeal::from_generators(f, gens);
          CHECK(ideal_norm(I) == e * e * a);
          CHECK(is_principal(I) == ideal_to_form_class(I).is_principal());
        }
      }
    }
  }
}

TEST_CASE("ideal sum and intersection") {
  Field f = make_field(5);
  FractionalIdeal P2 = FractionalIdeal::prime_above(f, 2);
  FractionalIdeal P3 = FractionalIdeal::prime_above(f, 3);
  FractionalIdeal sum = ideal_add(P2, P3);
  CHECK(sum == FractionalIdeal::unit(f));  // coprime
  FractionalIdeal meet = ideal_intersect(P2, P3);
  CHECK(meet == ideal_mul(P2, P3));  // coprime => intersection = product
  CHECK(ideal_contains(meet, FieldElement(f, 6, 0)) ==
        ideal_contains(P2, FieldElement(f, 6, 0)));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 25; ++i) {
    FractionalIdeal A = random_ideal(f, rng);
    FractionalIdeal B = random_ideal(f, rng);
    FractionalIdeal M = ideal_intersect(A, B);
    // M ⊆ A and M ⊆ B: check on the basis of M
    FieldElement g1(f, M.scale() * M.basis_a(), mpq_class(0));
    FieldElement g2(f, M.scale() * M.basis_b(), M.scale());
    for (const auto& x : {g1, g2}) {
      CHECK(ideal_contains(A, x));
      CHECK(ideal_contains(B, x));
    }
  }
}

TEST_CASE("an ideal times its conjugate is the norm ideal") {
  std::mt19937_64 rng(2025);
  for (i64 d : {1, 5, 14, 23}) {
    Field f = make_field(d);
    for (int i = 0; i < 40; ++i) {
      FractionalIdeal I = random_ideal(f, rng);
      mpq_class n = ideal_norm(I);
      FieldElement gen(f, n, mpq_class(0));
      CHECK(ideal_mul(I, conj_ideal(I)) == FractionalIdeal::principal(gen));
    }
  }
}

TEST_CASE("prime_above matches splitting behavior") {
  for (i64 d : {1, 2, 3, 5, 7, 11}) {
    Field f = make_field(d);
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
      FractionalIdeal P = FractionalIdeal::prime_above(f, p);
      SplittingType st = splitting_type(f, p);
      if (st == SplittingType::Inert) {
        CHECK(ideal_norm(P) == p * p);
      } else {
        CHECK(ideal_norm(P) == p);
      }
      if (st == SplittingType::Ramified) {
        CHECK(ideal_mul(P, P) ==
              FractionalIdeal::principal(FieldElement(f, p, 0)));
      }
    }
  }
}
