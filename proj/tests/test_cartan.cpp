#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "racg/builtin.hpp"
#include "racg/cartan.hpp"

using namespace vinberg;
using racg::builtin_nerve;
using racg::DomainError;

namespace {

RatMat mat2(int a11, const char* a12, const char* a21, int a22) {
  RatMat m(2, 2);
  m << Rat(a11), parse_rational(a12, "t"), parse_rational(a21, "t"), Rat(a22);
  return m;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-3/2", "f") == Rat(-3) / 2);
  CHECK(parse_rational("5", "f") == Rat(5));
  CHECK_THROWS_AS(parse_rational("2/0", "f"), DomainError);
  CHECK_THROWS_AS(parse_rational("x", "f"), DomainError);
  CHECK(rational_to_string(Rat(-3) / 2) == "-3/2");
}

TEST_CASE("exact determinant, kernel, inverse") {
  RatMat m = mat2(2, "-2", "-2", 2);
  CHECK(det(m) == 0);
  CHECK(kernel_basis(m).cols() == 1);
  CHECK_THROWS_AS(inverse(m), DomainError);

  RatMat h = mat2(2, "-3", "-2", 2);
  CHECK(det(h) == Rat(-2));
  RatMat hinv = inverse(h);
  CHECK(((h * hinv) - rat_identity(2)).cwiseAbs().sum() == 0);
}

TEST_CASE("cartan validation") {
  auto dih = builtin_nerve("dihedral");
  CHECK(validate_cartan(dih, geometric_cartan(dih)).valid);
  CHECK(validate_cartan(dih, mat2(2, "-3", "-2", 2)).valid);
  CHECK(!validate_cartan(dih, mat2(2, "-1", "-1", 2)).valid);  // product 1 < 4
  auto z2z2 = racg::CoxeterSystem({"a", "b"}, {{0, 1}});
  CHECK(!validate_cartan(z2z2, mat2(2, "-2", "-2", 2)).valid);  // must be 0
  CHECK(validate_cartan(z2z2, mat2(2, "0", "0", 2)).valid);
  // -3 * -2 = 6 >= 4 valid
  CHECK(validate_cartan(dih, mat2(2, "-3", "-2", 2)).valid);
}

TEST_CASE("fully nondegenerate") {
  CHECK(!is_fully_nondegenerate(mat2(2, "-2", "-2", 2)));
  CHECK(is_fully_nondegenerate(mat2(2, "-3", "-2", 2)));
  // geometric matrix of fig-a1 is singular (exact)
  auto a1 = builtin_nerve("fig-a1");
  CHECK(det(geometric_cartan(a1)) == 0);
  CHECK(!is_fully_nondegenerate(geometric_cartan(a1)));
}

TEST_CASE("negative type") {
  auto dih = builtin_nerve("dihedral");
  CHECK_THROWS_AS(is_negative_type(dih, geometric_cartan(dih)), DomainError);
  CHECK(is_negative_type(dih, mat2(2, "-3", "-2", 2)));
  auto single = racg::CoxeterSystem({"a"}, {});
  RatMat two(1, 1);
  two << Rat(2);
  CHECK(!is_negative_type(single, two));
  auto z2z2 = racg::CoxeterSystem({"a", "b"}, {{0, 1}});
  CHECK_THROWS_AS(is_negative_type(z2z2, mat2(2, "0", "0", 2)), DomainError);
}

TEST_CASE("characteristic polynomial") {
  RatMat h = mat2(2, "-3", "-2", 2);
  auto c = characteristic_polynomial(h);  // x^2 - 4x - 2
  REQUIRE(c.size() == 3);
  CHECK(c[2] == 1);
  CHECK(c[1] == -4);
  CHECK(c[0] == -2);
}

TEST_CASE("random fully nondegenerate cartan") {
  auto sys = builtin_nerve("fig-a1");
  auto a = random_fully_nondegenerate(sys, 1);
  auto b = random_fully_nondegenerate(sys, 1);
  CHECK(a == b);  // deterministic per seed
  CHECK(validate_cartan(sys, a).valid);
  CHECK(is_fully_nondegenerate(a));
  for (std::uint64_t seed : {2, 3, 4}) {
    auto m = random_fully_nondegenerate(sys, seed);
    CHECK(validate_cartan(sys, m).valid);
    CHECK(is_fully_nondegenerate(m));
  }
  RandomCartanOptions opt;
  opt.symmetric = true;
  auto s = random_fully_nondegenerate(sys, 5, opt);
  CHECK((s - s.transpose()).cwiseAbs().sum() == 0);
  opt.symmetric = false;
  opt.integer = true;
  auto z = random_fully_nondegenerate(sys, 6, opt);
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) CHECK(denominator(z(i, j)) == 1);
}

TEST_CASE("cartan json round trip") {
  auto sys = builtin_nerve("dihedral");
  auto a = mat2(2, "-3/2", "-8/3", 2);
  auto text = cartan_to_json(a);
  auto back = parse_cartan_json(sys, text);
  CHECK((a - back).cwiseAbs().sum() == 0);
  CHECK_THROWS_AS(parse_cartan_json(sys, "[[\"2\",\"2/0\"],[\"0\",\"2\"]]"),
                  DomainError);
}
