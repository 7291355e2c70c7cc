#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "racg/anosov.hpp"
#include "racg/builtin.hpp"

using namespace anosov;
using racg::builtin_nerve;
using racg::DomainError;
using racg::Word;
using vinberg::Rat;
using vinberg::RatMat;

namespace {

RatMat rat_diag(std::initializer_list<Rat> d) {
  RatMat m = RatMat::Zero(d.size(), d.size());
  int i = 0;
  for (const Rat& x : d) m(i, i) = x, ++i;
  return m;
}

vinberg::SimplicialRep dihedral_rep(bool unipotent) {
  auto sys = builtin_nerve("dihedral");
  RatMat a(2, 2);
  if (unipotent)
    a << Rat(2), Rat(-2), Rat(-2), Rat(2);
  else
    a << Rat(2), Rat(-3), Rat(-2), Rat(2);
  return vinberg::build_rep(sys, a);
}

Word random_word(std::mt19937_64& rng, int len, int rank) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % rank));
  return w;
}

}  // namespace

TEST_CASE("singular report basics") {
  // identity: mu = 0, subspaces undefined
  auto idrep = singular_report(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(idrep.mu.norm() == 0.0);
  CHECK(!idrep.subspaces_defined);

  auto d = singular_report(rat_diag({Rat(4), Rat(1), Rat(1) / 4}));
  CHECK(d.mu(0) == doctest::Approx(std::log(4.0)));
  CHECK(d.mu(1) == doctest::Approx(0.0));
  CHECK(d.mu(2) == doctest::Approx(-std::log(4.0)));
  CHECK(d.gap12() == doctest::Approx(std::log(4.0)));
  CHECK(d.subspaces_defined);

  Eigen::MatrixXd sing = Eigen::MatrixXd::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(singular_report(sing), DomainError);
}

TEST_CASE("mu transpose and inverse symmetry on random words") {
  auto sys = builtin_nerve("fig-a1");
  auto rep = vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 1));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    RatMat g = evaluate_word(rep, random_word(rng, 8, 5));
    Eigen::VectorXd mu = mu_vector(g);
    Eigen::VectorXd mut = mu_vector(RatMat(g.transpose()));
    CHECK((mu - mut).norm() <= 1e-9);
    // inverse: reversed negated
    Eigen::VectorXd mui = mu_vector(vinberg::inverse(g));
    CHECK((mui + mu.reverse()).norm() <= 1e-9);
    // det +-1: mu sums to ~0
    CHECK(std::abs(mu.sum()) <= 1e-9);
  }
}

TEST_CASE("scaled_double handles huge products") {
  auto rep = dihedral_rep(false);
  RatMat st = rep.gen[0] * rep.gen[1];
  RatMat p = vinberg::rat_identity(2);
  for (int i = 0; i < 512; ++i) p = p * st;  // entries ~ 3.73^512
  auto s = scaled_double(p);
  CHECK(s.m.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(s.m.cwiseAbs().maxCoeff() > 0.49);
  // mu12 = 2*512*log(lambda1) + O(1), lambda1 = 2 + sqrt(3)
  double expect = 2 * 512 * std::log(2.0 + std::sqrt(3.0));
  CHECK(std::abs(singular_report(p).gap12() - expect) < 3.0);
  // consecutive powers differ by exactly 2 log(lambda1) asymptotically
  RatMat p2 = p * st;
  CHECK(singular_report(p2).gap12() - singular_report(p).gap12() ==
        doctest::Approx(2 * std::log(2.0 + std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("additivity estimate") {
  auto sys = builtin_nerve("fig-a1");
  auto rep = vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 2));
  RatMat id = vinberg::rat_identity(5);
  std::mt19937_64 rng(43);
  RatMat g = evaluate_word(rep, random_word(rng, 10, 5));
  auto r0 = check_additivity(g, id, id);
  CHECK(r0.deviation == doctest::Approx(0.0));
  CHECK(!r0.violated);
  for (int trial = 0; trial < 200; ++trial) {
    RatMat gg = evaluate_word(rep, random_word(rng, 8, 5));
    RatMat h1 = evaluate_word(rep, random_word(rng, 4, 5));
    RatMat h2 = evaluate_word(rep, random_word(rng, 4, 5));
    CHECK(!check_additivity(gg, h1, h2).violated);
  }
}

TEST_CASE("transversality estimate") {
  // diagonal pair: tight with equality
  RatMat g = rat_diag({Rat(3), Rat(1)});
  auto r = check_transversality(g, g);
  CHECK(r.theta == doctest::Approx(M_PI / 2));
  CHECK(r.lhs == doctest::Approx(r.rhs));
  CHECK(!r.violated);

  // h = g^{-1}: gh = id, lhs 0, rhs <= 0
  RatMat ginv = vinberg::inverse(g);
  auto r2 = check_transversality(g, ginv);
  CHECK(r2.lhs == doctest::Approx(0.0));
  CHECK(r2.rhs <= 1e-12);
  CHECK(!r2.violated);

  auto sys = builtin_nerve("fig-a1");
  auto rep = vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 3));
  std::mt19937_64 rng(47);
  int done = 0;
  while (done < 200) {
    RatMat a = evaluate_word(rep, random_word(rng, 10, 5));
    RatMat b = evaluate_word(rep, random_word(rng, 10, 5));
    auto ra = singular_report(a);
    auto rb = singular_report(b);
    if (!ra.subspaces_defined || !rb.subspaces_defined) continue;
    if (ra.gap12() < 0.1 || rb.gap12() < 0.1) continue;
    CHECK(!check_transversality(a, b).violated);
    ++done;
  }
}

TEST_CASE("gap trace basics") {
  auto rep = dihedral_rep(false);
  // empty word -> single zero entry
  auto t0 = gap_trace(rep, {});
  CHECK(t0.mu.size() == 1);
  CHECK(t0.mu[0].norm() == 0.0);
  // non-geodesic input rejected
  CHECK_THROWS_AS(gap_trace(rep, {0, 0}), DomainError);

  Word w;
  for (int i = 0; i < 12; ++i) w.push_back(i % 2);
  auto t = gap_trace(rep, w, true);
  CHECK(t.mu.size() == 13);
  // pairwise route consistency: gap(n,m) from the suffix product equals
  // gap of the inverse computed the other way
  const int d = 2;
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= 12; ++m) {
      if (n == m) continue;
      Word sub;
      if (n < m)
        sub.assign(w.begin() + n, w.begin() + m);
      else {
        sub.assign(w.begin() + m, w.begin() + n);
        std::reverse(sub.begin(), sub.end());
      }
      Eigen::VectorXd mu = mu_vector(evaluate_word(rep, sub));
      CHECK(std::abs(t.pair_gap12(n, m) - (mu(0) - mu(1))) <= 1e-9);
      CHECK(std::abs(t.pair_mu1d(n, m) - (mu(0) - mu(d - 1))) <= 1e-9);
    }
}

TEST_CASE("unipotent vs loxodromic dihedral") {
  // geometric rep: (st)^n has mu12 ~ 2 log n + O(1)
  auto uni = dihedral_rep(true);
  Word w;
  for (int i = 0; i < 256; ++i) {
    w.push_back(0);
    w.push_back(1);
  }
  auto t = gap_trace(uni, w);
  auto fit = fit_gaps(trace_samples({t}), 0.0);
  CHECK(fit.a < 0.05);
  CHECK(fit.a > 0.0);

  // loxodromic rep: power scan slope = 2 log lambda_1(st)
  auto lox = dihedral_rep(false);
  auto scan = power_scan(lox, {0, 1}, 64);
  auto sfit = fit_gaps(scan_samples(scan), 0.0);
  double lam = 2.0 + std::sqrt(3.0);
  CHECK(sfit.a == doctest::Approx(2 * std::log(lam)).epsilon(0.05));
}

TEST_CASE("fit gaps closed form") {
  // exact line gap = 2 len
  std::vector<GapSample> s;
  for (int n = 0; n <= 10; ++n) s.push_back({(double)n, 2.0 * n});
  auto f = fit_gaps(s, 0.0);
  CHECK(f.a == doctest::Approx(2.0));
  CHECK(f.b == doctest::Approx(0.0));
  // with a cap, A rises and B saturates at the cap on the binding sample
  auto f2 = fit_gaps(s, 1.0);
  CHECK(f2.a == doctest::Approx(2.1));
  CHECK(f2.b <= 1.0 + 1e-12);
}

TEST_CASE("uniform regularity") {
  auto lox = dihedral_rep(false);
  Word w;
  for (int i = 0; i < 10; ++i) w.push_back(i % 2);
  auto t = gap_trace(lox, w, true);
  // in SL2, mu_12 = mu_1d: regularity with A = 1, B = 0 holds exactly
  auto r = uniform_regularity_check({t}, 1.0, 1e-9);
  CHECK(r.ok);
  // unipotent: fails for A > 0 with small B as n grows
  auto uni = dihedral_rep(true);
  Word wu;
  for (int i = 0; i < 64; ++i) wu.push_back(i % 2);
  auto tu = gap_trace(uni, wu, true);
  auto ru = uniform_regularity_check({tu}, 1.0, 1e-9);
  CHECK(ru.ok);  // d = 2: mu12 = mu1d always
}

TEST_CASE("convergence along a loxodromic trace") {
  auto lox = dihedral_rep(false);
  Word w;
  for (int i = 0; i < 40; ++i) w.push_back(i % 2);
  auto t = gap_trace(lox, w);
  auto c = convergence_check(t, 1e-6);
  CHECK(c.unstable_rate < 0);
  CHECK(c.final_unstable_step < 1e-6);
  CHECK(c.certified);

  // constant diagonal powers: exact constancy
  auto sys = builtin_nerve("dihedral");
  std::vector<Eigen::VectorXd> mus;
  GapTrace ct;
  RatMat dmat = rat_diag({Rat(4), Rat(1) / 4});
  RatMat p = vinberg::rat_identity(2);
  ct.word = {};
  for (int n = 0; n < 6; ++n) {
    p = p * dmat;
    auto rrep = singular_report(p);
    ct.mu.push_back(rrep.mu);
    ct.unstable.push_back(rrep.unstable);
    ct.stable_normal.push_back(rrep.stable_normal);
    ct.limit_hyperplane_normal.push_back(rrep.expanding_hyperplane_normal);
  }
  auto cc = convergence_check(ct, 1e-6);
  CHECK(cc.final_unstable_step == doctest::Approx(0.0));
}

TEST_CASE("point to cone angle") {
  Eigen::MatrixXd cone(3, 2);
  cone << 1, 0, 0, 1, 0, 0;
  Eigen::VectorXd inside(3), outside(3);
  inside << 1, 1, 0;
  outside << 0, 0, 1;
  CHECK(point_to_cone_angle(inside, cone) == doctest::Approx(0.0));
  CHECK(point_to_cone_angle(outside, cone) == doctest::Approx(M_PI / 2));
  Eigen::VectorXd tilted(3);
  tilted << 1, 0, 1;
  CHECK(point_to_cone_angle(tilted, cone) == doctest::Approx(M_PI / 4));
}

TEST_CASE("hilbert gap bound on a polytope") {
  // interval [-1,1] in the chart (x, 1), g = contraction diag(1/3, 1)-ish
  std::vector<vinberg::RatVec> gens;
  vinberg::RatVec g1(2), g2(2);
  g1 << Rat(-1), Rat(1);
  g2 << Rat(1), Rat(1);
  gens = {g1, g2};
  RatMat g = RatMat::Zero(2, 2);
  g(0, 0) = Rat(1) / 3;
  g(1, 1) = Rat(3);
  auto rpt = hilbert_gap_bound_check(gens, gens, g);
  CHECK(rpt.precondition_ok);
  // closed form: diam = log((1+e^-mu)/(1-e^-mu)), mu = mu12(g)
  double mu = rpt.mu12;
  double expect = std::log((1 + std::exp(-mu)) / (1 - std::exp(-mu)));
  CHECK(rpt.diam == doctest::Approx(expect).epsilon(1e-9));
  // rotation: no strict containment
  RatMat rot(2, 2);
  rot << Rat(0), Rat(-1), Rat(1), Rat(0);
  CHECK(!hilbert_gap_bound_check(gens, gens, rot).precondition_ok);
}

TEST_CASE("halfcone subspace locality") {
  auto sys = builtin_nerve("pentagon");
  auto rep = vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 1));
  // a long geodesic with full support
  Word w = racg::parse_word(sys, "a c e b d a c e b d a c");
  auto rpt = halfcone_subspace_check(rep, w, 1, 0.2, 3);
  CHECK(rpt.defined);
  CHECK(rpt.dist_to_halfcone <= 0.2);

  // element of a proper standard subgroup: E^+_1 near P(V_T), far from perp
  Word wt = racg::parse_word(sys, "a c a c a c a c a c");
  auto rt = halfcone_subspace_check(rep, wt, 1, 0.2, 3);
  CHECK(rt.defined);
  CHECK(rt.proper_support);
  CHECK(rt.dist_to_vt < 1e-6);
  CHECK(rt.dist_to_vt_perp > rt.transversality_angle - 1e-6 - rt.dist_to_vt);
  CHECK(rt.dist_to_vt_perp > 0.01);

  // identity -> undefined
  auto ri = halfcone_subspace_check(rep, {}, 1, 0.2, 2);
  CHECK(!ri.defined);
}
