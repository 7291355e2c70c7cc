// Acceptance suite: one pass/fail line per criterion.  Usage:
//   acceptance [path-to-cli] [criterion...]
// With no criterion arguments, all nine run.  Exits nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "racg/anosov.hpp"
#include "racg/appendix.hpp"
#include "racg/builtin.hpp"

using racg::builtin_nerve;
using racg::GenSet;
using racg::NormalForm;
using racg::Word;
using vinberg::Rat;
using vinberg::RatMat;
using vinberg::RatVec;

namespace {

std::string g_cli_path;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Word random_word(std::mt19937_64& rng, int len, int rank) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % rank));
  return w;
}

// Regression data pinned from the first run of this suite (see the values
// echoed in each criterion's detail output).
constexpr double kPinnedPentagonFitA[3] = {0.100399, 0.150180, 0.195781};
constexpr double kPinnedPentagonFloor = 0.547;

// --- criterion 1 -----------------------------------------------------------

Outcome criterion1() {
  std::mt19937_64 rng(2026);
  for (const char* name :
       {"fig-a1", "fig-a2", "pentagon", "dihedral", "free3"}) {
    auto sys = builtin_nerve(name);
    std::vector<RatMat> cartans{vinberg::geometric_cartan(sys)};
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      cartans.push_back(vinberg::random_fully_nondegenerate(sys, seed));
    for (const auto& a : cartans) {
      // build_rep verifies rho(s)^2 = id, commutation and alpha_i(v_j) = A_ij
      // with zero error and throws on any failure
      auto rep = vinberg::build_rep(sys, a);
      for (int trial = 0; trial < 10; ++trial) {
        auto x = racg::normalize(sys, random_word(rng, 6, sys.rank()));
        auto y = racg::normalize(sys, random_word(rng, 6, sys.rank()));
        RatMat lhs = evaluate(rep, racg::multiply(sys, x, y));
        RatMat rhs = evaluate(rep, x) * evaluate(rep, y);
        if ((lhs - rhs).cwiseAbs().sum() != 0)
          return {false, std::string("homomorphism failure on ") + name};
      }
    }
  }
  return {true, "exact relations on 5 nerves x (geometric + 5 seeds)"};
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion2() {
  for (const char* name : {"fig-a1", "pentagon"}) {
    auto sys = builtin_nerve(name);
    // all words of length <= 6
    Word w(6, 0);
    std::function<bool(int)> rec = [&](int pos) -> bool {
      if (pos == 6) return true;
      for (int s = 0; s < sys.rank(); ++s) {
        w[pos] = s;
        Word prefix(w.begin(), w.begin() + pos + 1);
        if (pos == 5) {
          if (racg::normalize(sys, prefix).letters() !=
              oracle::canonical(sys, prefix))
            return false;
        } else if (!rec(pos + 1)) {
          return false;
        }
      }
      return true;
    };
    // check every prefix length too (closure of the recursion covers len 6;
    // shorter lengths are prefixes of those, checked directly)
    for (int len = 0; len <= 5; ++len) {
      std::vector<Word> words{{}};
      for (int l = 0; l < len; ++l) {
        std::vector<Word> next;
        for (const auto& base : words)
          for (int s = 0; s < sys.rank(); ++s) {
            Word ws = base;
            ws.push_back(s);
            next.push_back(ws);
          }
        words = std::move(next);
      }
      for (const auto& u : words)
        if (racg::normalize(sys, u).letters() != oracle::canonical(sys, u))
          return {false, std::string("normal form mismatch on ") + name};
    }
    if (!rec(0))
      return {false, std::string("normal form mismatch on ") + name};
    for (int r = 0; r <= 8; ++r) {
      auto lib = racg::enumerate_ball(sys, r);
      auto naive = oracle::ball(sys, r);
      if (lib.size() != naive.size())
        return {false, std::string("ball size mismatch on ") + name +
                           " at radius " + std::to_string(r)};
    }
  }
  return {true, "normalize = rewriting closure (len <= 6); balls <= 8 agree"};
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion3() {
  auto sys = builtin_nerve("fig-a1");
  auto ball = racg::enumerate_ball(sys, 8);
  long long checked_pairs = 0;
  for (const auto& g : ball) {
    auto [walls, poset] = racg::walls_of(sys, g);
    if ((int)walls.size() != g.length())
      return {false, "wall count != word length"};
    for (std::size_t i = 0; i < walls.size(); ++i)
      for (std::size_t j = i + 1; j < walls.size(); ++j) {
        ++checked_pairs;
        if (poset.incomparable((int)i, (int)j) !=
            racg::walls_cross(sys, walls[i], walls[j]))
          return {false, "incomparability != crossing at " +
                             racg::to_string(sys, g)};
      }
    auto reps = oracle::geodesic_representatives(sys, g.letters());
    if (racg::count_linear_extensions(poset, reps.size() + 10) != reps.size())
      return {false,
              "extension count != representative count at " +
                  racg::to_string(sys, g)};
  }
  return {true, "exhaustive on " + std::to_string(ball.size()) +
                    " elements, " + std::to_string(checked_pairs) +
                    " wall pairs"};
}

// --- criterion 4 -----------------------------------------------------------

Outcome criterion4() {
  auto sys = builtin_nerve("fig-a1");
  auto ball = racg::enumerate_ball(sys, 10);
  for (const auto& g : ball) {
    if (g.length() == 0) continue;
    racg::WallPoset poset(sys, g.letters());
    auto d = racg::bpp_constant(poset, 64);
    if (!d) return {false, "bpp over cap"};
    int dd = std::max(*d, 1);
    std::uint64_t all = poset.size() == 64
                            ? ~std::uint64_t(0)
                            : (std::uint64_t(1) << poset.size()) - 1;
    // throws when no minimal wall meets the (2D+1)4^D bound
    try {
      racg::minimal_wall_low_crossings(poset, dd, all);
    } catch (const racg::DomainError& e) {
      return {false, std::string("lemma bound violated: ") + e.what()};
    }
  }
  // decomposition post-conditions on 500 seeded random geodesics
  std::mt19937_64 rng(404);
  int done = 0;
  while (done < 500) {
    auto g = racg::normalize(sys, random_word(rng, 30, 5));
    if (g.length() == 0) continue;
    auto d = racg::bpp_constant(sys, g, 64);
    if (!d) return {false, "bpp over cap on random geodesic"};
    try {
      // re-verifies properties (a)-(d) internally before returning
      racg::disjoint_decomposition(sys, g, std::max(*d, 1));
    } catch (const racg::DomainError& e) {
      return {false, std::string("decomposition post-condition: ") + e.what()};
    }
    ++done;
  }
  return {true, "radius-10 ball (" + std::to_string(ball.size()) +
                    " elements) + 500 random geodesics"};
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion5() {
  auto sys = builtin_nerve("dihedral");
  // geometric rep: fitted slope < 0.01 along (st)^n, n <= 1024
  auto geo = vinberg::geometric_rep(sys);
  Word w;
  for (int i = 0; i < 1024; ++i) {
    w.push_back(0);
    w.push_back(1);
  }
  auto trace = anosov::gap_trace(geo, w);
  auto fit = anosov::fit_gaps(anosov::trace_samples({trace}), 0.0);
  if (!(fit.a < 0.01))
    return {false, "geometric dihedral slope " + std::to_string(fit.a)};

  // loxodromic Cartan: power-scan slope within 5% of 2 log lambda_1(st)
  RatMat a(2, 2);
  a << Rat(2), Rat(-3), Rat(-2), Rat(2);
  auto lox = vinberg::build_rep(sys, a);
  auto scan = anosov::power_scan(lox, {0, 1}, 1024);
  auto sfit = anosov::fit_gaps(anosov::scan_samples(scan), 0.0);
  // char poly of rho(st) is x^2 - 4x + 1: lambda_1 = 2 + sqrt(3), exactly
  double lam = 2.0 + std::sqrt(3.0);
  double target = 2.0 * std::log(lam);
  if (std::abs(sfit.a - target) > 0.05 * target)
    return {false, "loxodromic slope " + std::to_string(sfit.a) + " vs " +
                       std::to_string(target)};
  return {true, "unipotent slope " + std::to_string(fit.a) +
                    "; loxodromic slope " + std::to_string(sfit.a) + " ~ " +
                    std::to_string(target)};
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion6() {
  auto sys = builtin_nerve("pentagon");
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto cartan = vinberg::random_fully_nondegenerate(sys, seed);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i != j && !sys.commutes(i, j) &&
            !(cartan(i, j) * cartan(j, i) > 4))
          return {false, "random Cartan without strict products"};
    auto rep = vinberg::build_rep(sys, cartan);
    std::mt19937_64 rng(7000 + seed);
    std::vector<anosov::GapTrace> traces;
    for (int t = 0; t < 200; ++t) {
      auto g = racg::normalize(sys, random_word(rng, 40, 5));
      traces.push_back(anosov::gap_trace(rep, g.letters(), true));
    }
    auto fit = anosov::fit_gaps(anosov::trace_samples(traces), 0.0);
    if (!(fit.a > 0))
      return {false, "fitted A not positive for seed " + std::to_string(seed)};
    if (fit.a < 0.5 * kPinnedPentagonFitA[seed - 1] ||
        fit.a > 2.0 * kPinnedPentagonFitA[seed - 1])
      return {false, "fitted A drifted from the pinned value: " +
                         std::to_string(fit.a)};
    // uniform regularity with the fitted constants, transported through the
    // per-letter mu_1d bound K
    double k_letter = 0;
    for (int s = 0; s < 5; ++s) {
      auto mu = anosov::mu_vector(rep.gen[s]);
      k_letter = std::max(k_letter, mu(0) - mu(4));
    }
    auto reg = anosov::uniform_regularity_check(traces, fit.a / k_letter,
                                                fit.b + 1e-9);
    if (!reg.ok)
      return {false, "regularity violated at seed " + std::to_string(seed) +
                         ", worst slack " + std::to_string(reg.worst_slack)};
    detail << "seed " << seed << ": A = " << fit.a << "; ";
  }
  return {true, detail.str()};
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7() {
  std::ostringstream detail;
  // appendix a1, k = 1 and k = 3
  {
    auto sys = builtin_nerve("fig-a1");
    for (int k : {1, 3}) {
      auto rpt = projgeom::appendix_certify_a1(
          vinberg::random_fully_nondegenerate(sys, 1), k, 6);
      if (!rpt.certified) {
        for (const auto& c : rpt.checks)
          if (!c.pass) return {false, "a1 k=" + std::to_string(k) + ": " +
                                          c.name};
        return {false, "a1 uncertified"};
      }
      if (!(std::abs(rpt.probe.margins.back()) < 1e-3))
        return {false, "a1 margin at max depth not below 1e-3"};
      for (std::size_t i = 1; i < rpt.probe.margins.size(); ++i)
        if (rpt.probe.margins[i] > rpt.probe.margins[i - 1] + 1e-12)
          return {false, "a1 margins not monotone"};
    }
    detail << "a1 k=1,3 certified; ";
  }
  // appendix a2, three seeds
  {
    auto sys = builtin_nerve("fig-a2");
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto rpt = projgeom::appendix_certify_a2(
          vinberg::random_fully_nondegenerate(sys, seed), 1, 5);
      if (!rpt.certified) {
        for (const auto& c : rpt.checks)
          if (!c.pass)
            return {false, "a2 seed=" + std::to_string(seed) + ": " + c.name};
        return {false, "a2 uncertified"};
      }
    }
    detail << "a2 seeds 1-3 certified; ";
  }
  // pentagon: strongly nested pair with a positive floor across depths 2-6
  {
    auto sys = builtin_nerve("pentagon");
    auto rep =
        vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 1));
    auto word = racg::normalize(sys, racg::parse_word(sys, "a c e b d a c"));
    if (racg::support(word) != 0b11111)
      return {false, "pentagon pair lacks full support"};
    auto walls = racg::walls_of(sys, word).first;
    projgeom::ProbeOptions opt;
    opt.min_depth = 2;
    opt.max_depth = 6;
    auto probe =
        projgeom::nesting_probe(rep, walls.front(), walls.back(), opt);
    if (probe.relation != projgeom::NestingRelation::kStronglyNestedAtDepth)
      return {false, "pentagon pair not strongly nested: " +
                         projgeom::to_string(probe.relation)};
    if (!(probe.floor_value >= kPinnedPentagonFloor))
      return {false,
              "pentagon floor " + std::to_string(probe.floor_value) +
                  " below pinned " + std::to_string(kPinnedPentagonFloor)};
    detail << "pentagon floor = " << probe.floor_value;
  }
  return {true, detail.str()};
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion8() {
  auto sys = builtin_nerve("fig-a1");
  auto rep =
      vinberg::build_rep(sys, vinberg::random_fully_nondegenerate(sys, 1));
  std::mt19937_64 rng(808);
  // additivity sweep
  for (int i = 0; i < 10000; ++i) {
    RatMat g = evaluate_word(rep, random_word(rng, 8, 5));
    RatMat h1 = evaluate_word(rep, random_word(rng, 4, 5));
    RatMat h2 = evaluate_word(rep, random_word(rng, 4, 5));
    if (anosov::check_additivity(g, h1, h2, 1e-8).violated)
      return {false, "additivity violated at sweep " + std::to_string(i)};
  }
  // transversality sweep
  int done = 0;
  while (done < 10000) {
    RatMat g = evaluate_word(rep, random_word(rng, 10, 5));
    RatMat h = evaluate_word(rep, random_word(rng, 10, 5));
    auto rg = anosov::singular_report(g);
    auto rh = anosov::singular_report(h);
    if (!rg.subspaces_defined || !rh.subspaces_defined) continue;
    if (rg.gap12() < 0.1 || rh.gap12() < 0.1) continue;
    if (anosov::check_transversality(g, h, 1e-8).violated)
      return {false, "transversality violated at sweep " + std::to_string(done)};
    ++done;
  }
  // Hilbert ball closed form to 1e-9 via the polytope machinery (interval
  // model) and the analytic ball model
  {
    std::vector<RatVec> gens;
    RatVec g1(2), g2(2);
    g1 << Rat(-1), Rat(1);
    g2 << Rat(1), Rat(1);
    gens = {g1, g2};
    RatMat contraction = RatMat::Zero(2, 2);
    contraction(0, 0) = Rat(1) / 5;
    contraction(1, 1) = Rat(5);
    auto rpt = anosov::hilbert_gap_bound_check(gens, gens, contraction);
    if (!rpt.precondition_ok) return {false, "hilbert precondition"};
    double mu = rpt.mu12;
    double closed = std::log((1 + std::exp(-mu)) / (1 - std::exp(-mu)));
    if (std::abs(rpt.diam - closed) > 1e-9)
      return {false, "hilbert ball closed form off: " +
                         std::to_string(rpt.diam - closed)};
    Eigen::VectorXd x(2), y(2);
    x << 0.0, 0.0;
    y << std::exp(-mu), 0.0;
    double bd = projgeom::hilbert_distance_ball(x, y);
    double expect = 0.5 * std::log((1 + std::exp(-mu)) / (1 - std::exp(-mu)));
    if (std::abs(bd - expect) > 1e-9)
      return {false, "ball model mismatch"};
  }
  // projective invariance and inclusion monotonicity at 1e-9
  {
    auto rnd = [&](int lo, int hi) {
      return lo + static_cast<int>(rng() % std::uint64_t(hi - lo + 1));
    };
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<RatVec> gens;
      for (int i = 0; i < 8; ++i) {
        RatVec p(3);
        p << Rat(rnd(-9, 9)), Rat(rnd(-9, 9)), Rat(10);
        gens.push_back(p);
      }
      RatVec x(3), y(3);
      x << Rat(1), Rat(0), Rat(10);
      y << Rat(0), Rat(1), Rat(10);
      double d0;
      projgeom::PolytopeBody body;
      try {
        body = projgeom::make_polytope_body(gens);
        d0 = projgeom::hilbert_distance(body, x, y);
      } catch (const racg::DomainError&) {
        continue;  // x or y escaped this random hull; resample
      }
      RatMat g(3, 3);
      do {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) g(i, j) = Rat(rnd(-4, 4));
      } while (vinberg::det(g) == 0);
      std::vector<RatVec> tg;
      for (const auto& p : gens) tg.push_back(g * p);
      double d1 = projgeom::hilbert_distance(projgeom::make_polytope_body(tg),
                                             RatVec(g * x), RatVec(g * y));
      if (std::abs(d0 - d1) > 1e-9)
        return {false, "projective invariance off by " +
                           std::to_string(d0 - d1)};
      // inclusion monotonicity: shrink toward x
      std::vector<RatVec> small;
      for (const auto& p : gens) small.push_back((p + x) / 2);
      double ds =
          projgeom::hilbert_distance(projgeom::make_polytope_body(small), x, y);
      if (ds < d0 - 1e-9)
        return {false, "inclusion monotonicity violated"};
    }
  }
  return {true, "2 x 10^4 sweeps clean; ball closed form and invariance at "
                "1e-9"};
}

// --- criterion 9 -----------------------------------------------------------

std::string run_cli(const std::string& args, const std::string& outfile) {
  std::string cmd = g_cli_path + " " + args + " > " + outfile + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  if (rc != 0) return "";
  std::ifstream f(outfile, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  if (g_cli_path.empty()) return {false, "no CLI path provided"};
  const char* cases[] = {
      "word normalize --nerve fig-a1 --word \"b d e a c\"",
      "word ball --nerve pentagon --radius 5 --format csv",
      "gaps trace --nerve dihedral --geometric --word \"s t s t s t\" "
      "--format csv",
      "rep random --nerve pentagon --seed 3",
      "walls decompose --nerve fig-a1 --word \"b d b d e a c a c\"",
      "appendix a1 --k 1 --depth 4",
  };
  int idx = 0;
  for (const char* c : cases) {
    ++idx;
    std::string base = "/tmp/racg_det_" + std::to_string(idx);
    std::string r1 = run_cli(c, base + "_1.out");
    std::string r2 = run_cli(c, base + "_2.out");
    std::string r3 =
        run_cli(std::string(c) + " --threads 4", base + "_3.out");
    std::string r4 =
        run_cli(std::string(c) + " --threads 1", base + "_4.out");
    if (r1.empty() || r1 != r2)
      return {false, std::string("repetition mismatch on: ") + c};
    if (r3.empty() || r4.empty() || r3 != r4)
      return {false, std::string("thread-count mismatch on: ") + c};
  }
  // exit-code contract: 0 success, 1 domain error, 2 usage error
  auto exit_code = [&](const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " > /dev/null 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };
  if (exit_code("word normalize --nerve fig-a1 --word \"a a\"") != 0)
    return {false, "success exit code"};
  if (exit_code("word normalize --nerve fig-a1 --word \"q q\"") != 1)
    return {false, "domain-error exit code"};
  if (exit_code("word normalize --no-such-flag") != 2)
    return {false, "usage-error exit code"};
  return {true, "byte-identical across repetitions and thread counts; exit "
                "codes 0/1/2 honored"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  std::set<int> which;
  for (int i = 2; i < argc; ++i) which.insert(std::atoi(argv[i]));

  struct Entry {
    int number;
    const char* title;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "exact algebra suite", criterion1},
      {2, "word-problem oracle equivalence", criterion2},
      {3, "wall-layer correctness", criterion3},
      {4, "minimal-wall bound and decomposition post-conditions", criterion4},
      {5, "unipotent vs loxodromic dihedral contrast", criterion5},
      {6, "pentagon gap growth and uniform regularity", criterion6},
      {7, "appendix certifications and nesting probes", criterion7},
      {8, "numerical-inequality sweeps", criterion8},
      {9, "CLI determinism", criterion9},
  };

  bool all_pass = true;
  for (const auto& e : entries) {
    if (!which.empty() && !which.count(e.number)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    auto secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::printf("%s criterion %d: %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL",
                e.number, e.title, secs,
                o.detail.empty() ? "" : ("- " + o.detail).c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
