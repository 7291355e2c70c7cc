#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "racg/appendix.hpp"
#include "racg/builtin.hpp"

using namespace projgeom;
using racg::builtin_nerve;

TEST_CASE("appendix a1 certifies at low depth") {
  auto sys = builtin_nerve("fig-a1");
  auto cartan = vinberg::random_fully_nondegenerate(sys, 1);
  auto rep = appendix_certify_a1(cartan, 1, 4);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.certified);
  CHECK(rep.probe.relation == NestingRelation::kMarginDecay);
}

TEST_CASE("appendix a2 certifies at low depth") {
  auto sys = builtin_nerve("fig-a2");
  auto cartan = vinberg::random_fully_nondegenerate(sys, 1);
  auto rep = appendix_certify_a2(cartan, 1, 4);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.certified);
}

TEST_CASE("appendix rejects bad cartan input") {
  auto a1 = builtin_nerve("fig-a1");
  CHECK_THROWS_AS(appendix_certify_a1(vinberg::geometric_cartan(a1), 1, 3),
                  racg::DomainError);  // singular
  auto a2 = builtin_nerve("fig-a2");
  CHECK_THROWS_AS(appendix_certify_a2(vinberg::geometric_cartan(a2), 1, 3),
                  racg::DomainError);  // not fully nondegenerate
}
