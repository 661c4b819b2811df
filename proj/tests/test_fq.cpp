#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tritype/fq.hpp"
#include "tritype/fqpoly.hpp"
#include "tritype/linalg.hpp"

using namespace tritype;

TEST_CASE("prime field basics", "[fq]") {
  Fq f3 = Fq::prime_field(3);
  CHECK(f3.add(2, 2) == 1);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f3.neg(1) == 2);

  Fq f5 = Fq::prime_field(5);
  CHECK(f5.inv(2) == 3);
  CHECK_THROWS_AS(f5.inv(0), error);
}

TEST_CASE("extension field F4", "[fq]") {
  // F_4 = F_2[t]/(t^2+t+1); t has code 2, t+1 has code 3
  Fq f4(FieldDescriptor{2, 2, {1, 1, 1}});
  FqElem t = f4.from_digits(std::vector<std::int64_t>{0, 1});
  REQUIRE(t == 2);
  CHECK(f4.mul(t, t) == 3);
  CHECK(f4.mul(t, f4.inv(t)) == 1);
  CHECK(f4.trace(0) == 0);
  CHECK(f4.trace(t) == 1);
}

TEST_CASE("trace in F9", "[fq]") {
  Fq f9(FieldDescriptor{3, 2, {1, 0, 1}}); // t^2 + 1 irreducible over F_3
  CHECK(f9.trace(1) == 2);
  CHECK(f9.trace(0) == 0);
  // trace is additive and lands in the prime field
  for (FqElem a = 0; a < 9; ++a)
    for (FqElem b = 0; b < 9; ++b)
      CHECK((f9.trace(f9.add(a, b))) == (f9.trace(a) + f9.trace(b)) % 3);
}

TEST_CASE("descriptor validation", "[fq]") {
  CHECK_THROWS_AS(Fq::prime_field(6), error);
  CHECK_THROWS_AS(Fq(FieldDescriptor{2, 2, {0, 0, 1}}), error); // t^2 reducible
  CHECK_THROWS_AS(Fq(FieldDescriptor{3, 2, {2, 0, 1}}), error); // t^2 - 1 reducible
  CHECK_NOTHROW(Fq(FieldDescriptor{3, 2, {1, 0, 1}}));
}

static void check_field_axioms_exhaustive(const Fq& F) {
  std::int64_t q = F.q();
  for (FqElem a = 0; a < q; ++a) {
    CHECK(F.add(a, 0) == a);
    CHECK(F.mul(a, 1) == a);
    CHECK(F.add(a, F.neg(a)) == 0);
    if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    for (FqElem b = 0; b < q; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      for (FqElem c = 0; c < q; ++c) {
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  }
}

TEST_CASE("field axioms, exhaustive for small q", "[fq]") {
  check_field_axioms_exhaustive(Fq::prime_field(2));
  check_field_axioms_exhaustive(Fq::prime_field(3));
  check_field_axioms_exhaustive(Fq::prime_field(5));
  check_field_axioms_exhaustive(Fq::prime_power(4));
  check_field_axioms_exhaustive(Fq::prime_power(8));
  check_field_axioms_exhaustive(Fq::prime_power(9));
}

TEST_CASE("field axioms, sampled for larger q", "[fq]") {
  // q = 257 and q = 343 bypass the lookup tables
  std::mt19937_64 rng(12345);
  for (const Fq& F : {Fq::prime_field(257), Fq::prime_power(343)}) {
    std::uniform_int_distribution<std::int64_t> pick(0, F.q() - 1);
    for (int it = 0; it < 300; ++it) {
      FqElem a = (FqElem)pick(rng), b = (FqElem)pick(rng), c = (FqElem)pick(rng);
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.sub(a, a) == 0);
    }
  }
}

TEST_CASE("frobenius fixes prime field exactly", "[fq]") {
  Fq F = Fq::prime_power(9);
  for (FqElem a = 0; a < 9; ++a) {
    bool fixed = F.pow(a, 3) == a;
    CHECK(fixed == (a < 3));
  }
}

TEST_CASE("rank and kernel", "[linalg]") {
  Fq f3 = Fq::prime_field(3);
  FqMatrix m(2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 1;
  m.at(1, 0) = 2; m.at(1, 1) = 2;
  CHECK(rank(f3, m) == 1);

  CHECK(kernel_basis(f3, FqMatrix::identity(3)).empty());
  CHECK(kernel_basis(f3, FqMatrix(2, 2)).size() == 2);
}

TEST_CASE("solve and inverse", "[linalg]") {
  Fq f5 = Fq::prime_field(5);
  FqMatrix m(2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  m.at(1, 0) = 3; m.at(1, 1) = 4;
  FqMatrix mi = inverse(f5, m);
  // m * mi = I
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      FqElem acc = 0;
      for (std::size_t k = 0; k < 2; ++k) acc = f5.add(acc, f5.mul(m.at(i, k), mi.at(k, j)));
      CHECK(acc == (i == j ? 1u : 0u));
    }

  Vec rhs = {1, 1};
  auto x = solve(f5, m, rhs);
  REQUIRE(x.has_value());
  CHECK(mat_vec(f5, m, *x) == rhs);

  FqMatrix sing(2, 2);
  sing.at(0, 0) = 1; sing.at(0, 1) = 2;
  sing.at(1, 0) = 2; sing.at(1, 1) = 4;
  CHECK_THROWS_AS(inverse(f5, sing), error);
  CHECK(!solve(f5, sing, Vec{0, 1}).has_value());
}

TEST_CASE("kernel vectors actually map to zero", "[linalg]") {
  std::mt19937_64 rng(777);
  for (std::int64_t q : {2, 3, 4, 9}) {
    Fq F = Fq::prime_power(q);
    std::uniform_int_distribution<std::int64_t> pick(0, q - 1);
    for (int it = 0; it < 40; ++it) {
      std::size_t r = 1 + (std::size_t)(rng() % 5), c = 1 + (std::size_t)(rng() % 5);
      FqMatrix m(r, c);
      for (auto& e : m.a) e = (FqElem)pick(rng);
      auto kb = kernel_basis(F, m);
      CHECK(rank(F, m) + kb.size() == c);
      Vec zero(r, 0);
      for (const auto& v : kb) CHECK(mat_vec(F, m, v) == zero);
    }
  }
}

TEST_CASE("coordinate solver round trips", "[linalg]") {
  Fq F = Fq::prime_field(3);
  std::vector<Vec> basis = {{1, 0, 2}, {0, 1, 1}};
  CoordSolver cs(F, basis, 3);
  Vec v = F.add(0, 0) == 0 ? Vec{2, 1, 2} : Vec{}; // 2*b0 + 1*b1 = (2,1,5)= (2,1,2)
  auto c = cs.coords(v);
  CHECK(c == Vec{2, 1});
  CHECK(cs.combine(c) == v);
  CHECK(!cs.contains(Vec{0, 0, 1}));
  CHECK_THROWS_AS(cs.coords(Vec{0, 0, 1}), error);
}

TEST_CASE("empty coordinate solver handles the zero space", "[linalg]") {
  Fq F = Fq::prime_field(3);
  CoordSolver cs(F, {}, 0);
  CHECK(cs.coords(Vec{}).empty());
  CoordSolver cs2(F, {}, 2);
  CHECK(cs2.contains(Vec{0, 0}));
  CHECK(!cs2.contains(Vec{1, 0}));
}

TEST_CASE("polynomial division and gcd", "[fqpoly]") {
  Fq F = Fq::prime_field(3);
  Poly a = {2, 0, 1};       // x^2 + 2
  Poly b = {1, 1};          // x + 1
  auto [q, r] = p_divmod(F, a, b);
  CHECK(p_add(F, p_mul(F, q, b), r) == a);
  CHECK(p_gcd(F, Poly{2, 1}, Poly{2, 1}) == Poly{2, 1});
  // gcd(x^2-1, x-1) = x-1 = x+2 over F_3
  CHECK(p_gcd(F, Poly{2, 0, 1}, Poly{2, 1}) == Poly{2, 1});
}

TEST_CASE("berlekamp factorization", "[fqpoly]") {
  Fq f3 = Fq::prime_field(3);
  // x^2 - 1 = (x+1)(x+2)
  auto fs = berlekamp_factors(f3, Poly{2, 0, 1});
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == Poly{1, 1});
  CHECK(fs[1] == Poly{2, 1});
  // x^2 + 1 stays irreducible over F_3
  CHECK(p_is_irreducible(f3, Poly{1, 0, 1}));

  Fq f5 = Fq::prime_field(5);
  // x^4 - 1 splits into four linear factors over F_5
  auto fs5 = berlekamp_factors(f5, Poly{4, 0, 0, 0, 1});
  REQUIRE(fs5.size() == 4);
  Poly prod = {1};
  for (const auto& f : fs5) { CHECK(p_deg(f) == 1); prod = p_mul(f5, prod, f); }
  CHECK(prod == Poly{4, 0, 0, 0, 1});
  // x^2 + 1 = (x+2)(x+3) over F_5
  auto fs51 = berlekamp_factors(f5, Poly{1, 0, 1});
  REQUIRE(fs51.size() == 2);
  CHECK(fs51[0] == Poly{2, 1});
  CHECK(fs51[1] == Poly{3, 1});
}

TEST_CASE("berlekamp over an extension field", "[fqpoly]") {
  Fq f4 = Fq::prime_power(4);
  // x^3 - 1 = (x-1)(x-t)(x-t^2) over F_4: cube roots of unity are 1, t, t+1
  auto fs = berlekamp_factors(f4, Poly{f4.neg(1), 0, 0, 1});
  REQUIRE(fs.size() == 3);
  for (const auto& f : fs) CHECK(p_deg(f) == 1);
}

TEST_CASE("minimal polynomial of operators", "[fqpoly]") {
  Fq F = Fq::prime_field(3);
  CHECK(minimal_polynomial(F, FqMatrix::identity(3)) == Poly{2, 1}); // x - 1
  FqMatrix nil(2, 2);
  nil.at(0, 1) = 1;
  CHECK(minimal_polynomial(F, nil) == Poly{0, 0, 1}); // x^2
  FqMatrix diag(2, 2);
  diag.at(0, 0) = 1; diag.at(1, 1) = 2;
  CHECK(minimal_polynomial(F, diag) == Poly{2, 0, 1}); // (x-1)(x-2) = x^2 - 1 = x^2+2
}
