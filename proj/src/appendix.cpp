#include "racg/appendix.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "racg/builtin.hpp"

namespace projgeom {

using racg::DomainError;
using racg::Word;
using vinberg::Rat;
using vinberg::RatMat;
using vinberg::RatRow;
using vinberg::RatVec;

namespace {

void add_check(CertReport* rep, const std::string& name, bool pass,
               const std::string& detail = "") {
  rep->checks.push_back({name, pass, detail});
}

bool all_pass(const CertReport& rep) {
  for (const auto& c : rep.checks)
    if (!c.pass) return false;
  return true;
}

// column span membership: v in span(basis)?
bool in_span(const RatMat& basis, const RatVec& v) {
  RatMat m(basis.rows(), basis.cols() + 1);
  m.leftCols(basis.cols()) = basis;
  m.col(basis.cols()) = v;
  return vinberg::kernel_basis(m).cols() ==
         vinberg::kernel_basis(basis).cols() + 1;
}

int rank_of(const RatMat& m) {
  return static_cast<int>(m.cols() - vinberg::kernel_basis(m).cols());
}

// Fixed subspace of a set of generators: kernel of the stacked rho(s) - id.
RatMat fixed_subspace(const vinberg::SimplicialRep& rep,
                      const std::vector<int>& gens) {
  const int d = rep.dim();
  RatMat stack(d * gens.size(), d);
  for (std::size_t i = 0; i < gens.size(); ++i)
    stack.middleRows(static_cast<int>(i) * d, d) =
        rep.gen[gens[i]] - vinberg::rat_identity(d);
  return vinberg::kernel_basis(stack);
}

// A functional vanishing on the columns of `flat`, nonpositive on every
// support point, and -1 on the interior sample: the supporting-hyperplane
// certificate for the witness flat.
bool supporting_functional(const RatMat& flat,
                           const std::vector<RatVec>& support_points,
                           const RatVec& interior, RatRow* out) {
  const int d = static_cast<int>(flat.rows());
  RatMat rows = flat.transpose();  // phi * flat = 0  <=>  rows * phi^T = 0
  RatMat null_basis = vinberg::kernel_basis(rows);
  const int k = static_cast<int>(null_basis.cols());
  if (k == 0) return false;
  // variables: c+ (k), c- (k), slack per support point; rows: one equality
  // per support point (phi(g) + s = 0) and the normalization phi(x0) = -1.
  const int m = static_cast<int>(support_points.size());
  RatMat a = RatMat::Zero(m + 1, 2 * k + m);
  RatVec b = RatVec::Zero(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      Rat val = null_basis.col(j).dot(support_points[i]);
      a(i, j) = val;
      a(i, k + j) = -val;
    }
    a(i, 2 * k + i) = 1;
  }
  for (int j = 0; j < k; ++j) {
    Rat val = null_basis.col(j).dot(interior);
    a(m, j) = val;
    a(m, k + j) = -val;
  }
  b(m) = Rat(-1);
  auto res = linprog::maximize(a, b, RatVec::Zero(2 * k + m));
  if (res.status != linprog::Status::kOptimal) return false;
  RatRow phi = RatRow::Zero(d);
  for (int j = 0; j < k; ++j)
    phi += vinberg::to_double(res.x(j)) == 0 && res.x(j) == 0 &&
                   res.x(k + j) == 0
               ? RatRow::Zero(d)
               : RatRow((res.x(j) - res.x(k + j)) * null_basis.col(j).transpose());
  *out = phi;
  return true;
}

Word power_word(const std::vector<int>& block, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.insert(w.end(), block.begin(), block.end());
  return w;
}

// Ball of a standard subgroup: words over the listed generators only.
std::vector<racg::NormalForm> subgroup_ball(const racg::CoxeterSystem& sys,
                                            const std::vector<int>& gens,
                                            int radius) {
  std::vector<racg::NormalForm> ball{racg::normalize(sys, {})};
  std::vector<racg::NormalForm> frontier = ball;
  std::unordered_set<racg::NormalForm, racg::NormalFormHash> seen(
      ball.begin(), ball.end());
  for (int r = 1; r <= radius; ++r) {
    std::vector<racg::NormalForm> next;
    for (const auto& x : frontier)
      for (int s : gens) {
        auto y = racg::multiply(sys, x, racg::normalize(sys, {s}));
        if (y.length() == r && seen.insert(y).second) next.push_back(y);
      }
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return ball;
}

}  // namespace

CertReport appendix_certify_a1(const RatMat& cartan, int k, int depth) {
  if (k < 1) throw DomainError("appendix a1: k must be positive");
  auto sys = racg::builtin_nerve("fig-a1");
  const int ia = sys.index_of("a"), ib = sys.index_of("b"),
            ic = sys.index_of("c"), id_ = sys.index_of("d"),
            ie = sys.index_of("e");
  auto rep = vinberg::build_rep(sys, cartan);
  if (vinberg::det(cartan) == 0)
    throw DomainError("appendix a1: Cartan matrix must be nonsingular");

  CertReport out;
  out.which = "a1";
  out.k = k;

  Word w = power_word({ib, id_}, k);
  w.push_back(ie);
  Word tail = power_word({ia, ic}, k);
  w.insert(w.end(), tail.begin(), tail.end());
  auto nf = racg::normalize(sys, w);
  out.gamma = nf;
  add_check(&out, "word-geodesic", nf.letters() == w);

  auto walls = racg::walls_of(sys, nf).first;
  out.wall_first = walls.front();
  out.wall_last = walls.back();

  // (i) full support of gamma(W, W')
  auto gamma = racg::gamma_of(sys, out.wall_first, out.wall_last);
  racg::GenSet full = (racg::GenSet(1) << 5) - 1;
  add_check(&out, "gamma-equals-word", gamma == nf);
  add_check(&out, "gamma-full-support", racg::support(gamma) == full,
            "gamma(W, W') lies in no proper standard subgroup");

  // (ii) half-space nesting
  add_check(&out, "halfspace-nesting",
            racg::separates_identity_from(sys, out.wall_first, out.wall_last));

  // (iii) exact witness incidences
  auto rays = fundamental_rays(rep);
  RatVec r_b = rays.col(ib), r_d = rays.col(id_), r_e = rays.col(ie);
  RatVec v_b = rep.v.col(ib);

  RatMat h_ac = fixed_subspace(rep, {ia, ic});
  bool subspace_ok = h_ac.cols() == 3 && in_span(h_ac, r_d) &&
                     in_span(h_ac, r_e) && in_span(h_ac, v_b);
  RatMat triangle(5, 3);
  triangle.col(0) = r_d;
  triangle.col(1) = r_e;
  triangle.col(2) = v_b;
  subspace_ok = subspace_ok && rank_of(triangle) == 3;
  add_check(&out, "witness-flat-spans-H_ac", subspace_ok,
            "r_d, r_e, v_b independent inside the fixed plane of C(a,c)");

  RatMat bd_k = evaluate_word(rep, power_word({ib, id_}, k));
  std::vector<RatVec> witnesses{RatVec(bd_k * r_b), RatVec(bd_k * r_d)};

  auto g_last = wall_geometry(rep, out.wall_last);
  bool on_wall = true, in_triangle = true;
  for (const auto& p : witnesses) {
    on_wall = on_wall && Rat(g_last.alpha * p) == 0;
    in_triangle = in_triangle &&
                  linprog::in_conic_hull({r_d, r_e, v_b}, p);
  }
  add_check(&out, "witness-on-last-wall", on_wall,
            "both witness points lie on the hyperplane of W'");
  add_check(&out, "witness-in-polar-triangle", in_triangle,
            "both witness points lie in cone(r_d, r_e, v_b) through the polar");

  // witnesses belong to the closure data of Hc_+(W')
  {
    std::vector<racg::NormalForm> seeds;
    Word p;
    seeds.push_back(racg::normalize(sys, p));
    for (int s : w) {
      p.push_back(s);
      seeds.push_back(racg::normalize(sys, p));
    }
    auto base = corridor_domain(rep, seeds, depth, std::max(depth, 8));
    auto inner = halfcone_approx(rep, base, out.wall_last, +1, depth);
    bool member = true;
    for (const auto& pt : witnesses)
      member = member && linprog::in_conic_hull(inner.points, pt);
    add_check(&out, "witness-in-inner-halfcone-data", member);

    // supporting functional through the polar triangle
    auto outer = halfcone_approx(rep, base, out.wall_first, +1, depth);
    RatRow phi;
    bool supp = supporting_functional(triangle, outer.points,
                                      interior_point(rep), &phi);
    if (supp)
      for (const auto& pt : witnesses) supp = supp && Rat(phi * pt) == 0;
    add_check(&out, "witness-flat-supports-outer-halfcone", supp,
              "a functional vanishes on the flat, is nonpositive on the "
              "outer half-cone data and negative at the interior sample");
  }

  // (iv) margin decay
  ProbeOptions popt;
  popt.min_depth = 2;
  popt.max_depth = depth;
  out.probe = nesting_probe(rep, out.wall_first, out.wall_last, popt);
  bool decay = out.probe.relation == NestingRelation::kMarginDecay;
  bool monotone = true;
  for (std::size_t i = 1; i < out.probe.margins.size(); ++i)
    if (out.probe.margins[i] > out.probe.margins[i - 1] + 1e-12)
      monotone = false;
  bool last_small = !out.probe.margins.empty() &&
                    std::abs(out.probe.margins.back()) < 1e-3;
  add_check(&out, "margin-decay", decay && monotone && last_small);

  out.certified = all_pass(out);
  return out;
}

CertReport appendix_certify_a2(const RatMat& cartan, int k, int depth) {
  if (k < 1) throw DomainError("appendix a2: k must be positive");
  auto sys = racg::builtin_nerve("fig-a2");
  const int t1 = sys.index_of("t1"), t2 = sys.index_of("t2"),
            t3 = sys.index_of("t3"), d1 = sys.index_of("d1"),
            d2 = sys.index_of("d2"), ie = sys.index_of("e");
  if (!vinberg::is_fully_nondegenerate(cartan))
    throw DomainError("appendix a2: Cartan matrix must be fully nondegenerate");
  auto rep = vinberg::build_rep(sys, cartan);

  CertReport out;
  out.which = "a2";
  out.k = k;

  Word w = power_word({t1, t3, t2}, k);
  w.push_back(ie);
  Word tail = power_word({d1, d2}, k);
  w.insert(w.end(), tail.begin(), tail.end());
  auto nf = racg::normalize(sys, w);
  out.gamma = nf;
  add_check(&out, "word-geodesic", nf.letters() == w);

  auto walls = racg::walls_of(sys, nf).first;
  out.wall_first = walls.front();
  out.wall_last = walls.back();

  auto gamma = racg::gamma_of(sys, out.wall_first, out.wall_last);
  racg::GenSet full = (racg::GenSet(1) << 6) - 1;
  add_check(&out, "gamma-equals-word", gamma == nf);
  add_check(&out, "gamma-full-support", racg::support(gamma) == full);
  add_check(&out, "halfspace-nesting",
            racg::separates_identity_from(sys, out.wall_first, out.wall_last));

  // Sigma polytopes: hexagon for T, segment for {t1, t3}
  racg::GenSet t_mask = (racg::GenSet(1) << t1) | (racg::GenSet(1) << t2) |
                        (racg::GenSet(1) << t3);
  auto hexagon = sigma_polytope(rep, t_mask);
  add_check(&out, "sigma-T-hexagon", hexagon.size() == 6,
            "Sigma_T has 6 extreme rays");
  auto edge = sigma_polytope(
      rep, (racg::GenSet(1) << t1) | (racg::GenSet(1) << t3));
  add_check(&out, "sigma-t1t3-segment", edge.size() == 2);

  // the edge lies in the fixed subspace of {d1, d2, e}
  RatMat h_de = fixed_subspace(rep, {d1, d2, ie});
  bool edge_in = !edge.empty();
  for (const auto& r : edge) edge_in = edge_in && in_span(h_de, r);
  add_check(&out, "edge-in-H_DE", edge_in,
            "Sigma_{t1,t3} lies in the fixed subspace of C(D union E)");

  // witnesses: the (t1 t3 t2)^k translate of the edge
  RatMat tr = evaluate_word(rep, power_word({t1, t3, t2}, k));
  std::vector<RatVec> witnesses;
  for (const auto& r : edge) witnesses.push_back(tr * r);

  auto g_last = wall_geometry(rep, out.wall_last);
  bool on_wall = true;
  for (const auto& p : witnesses)
    on_wall = on_wall && Rat(g_last.alpha * p) == 0;
  add_check(&out, "witness-on-last-wall", on_wall,
            "the translated edge lies on the hyperplane of W'");

  // C(T)-orbit of the Sigma_T data: the minimal-domain polygon P_min
  std::vector<RatVec> pmin_points;
  {
    auto ball_t = subgroup_ball(sys, {t1, t2, t3}, 3 * k + 2);
    std::unordered_map<std::string, bool> seen;
    std::vector<RatVec> seeds_rays = hexagon;
    seeds_rays.insert(seeds_rays.end(), edge.begin(), edge.end());
    for (const auto& g : ball_t) {
      RatMat m = evaluate(rep, g);
      for (const auto& r : seeds_rays) {
        RatVec p = vinberg::normalize_ray(m * r);
        if (seen.emplace(vinberg::vec_key(p), true).second)
          pmin_points.push_back(p);
      }
    }
  }

  // witness inside the half-cone of the P_min wall through the polar
  auto g_first = wall_geometry(rep, out.wall_first);
  {
    std::vector<RatVec> flat_cone{g_first.polar};
    for (const auto& p : pmin_points)
      if (Rat(g_first.alpha * p) == 0) flat_cone.push_back(p);
    bool member = flat_cone.size() > 1;
    for (const auto& p : witnesses)
      member = member && linprog::in_conic_hull(flat_cone, p);
    add_check(&out, "witness-in-pmin-halfcone", member,
              "translated edge lies in cone(polar, P_min wall points)");
  }

  // supporting functional vanishing on V_T
  {
    RatMat vt(6, 3);
    vt.col(0) = rep.v.col(t1);
    vt.col(1) = rep.v.col(t2);
    vt.col(2) = rep.v.col(t3);
    std::vector<racg::NormalForm> seeds;
    Word p;
    seeds.push_back(racg::normalize(sys, p));
    for (int s : w) {
      p.push_back(s);
      seeds.push_back(racg::normalize(sys, p));
    }
    auto base = corridor_domain(rep, seeds, depth, std::max(depth, 8));
    auto outer = halfcone_approx(rep, base, out.wall_first, +1, depth);
    RatRow phi;
    bool supp = supporting_functional(vt, outer.points, interior_point(rep),
                                      &phi);
    if (supp)
      for (const auto& pt : witnesses) supp = supp && Rat(phi * pt) == 0;
    add_check(&out, "witness-flat-supports-outer-halfcone", supp);
  }

  // margin decay with the minimal-domain enrichment
  ProbeOptions popt;
  popt.min_depth = 2;
  popt.max_depth = depth;
  popt.enrichment = pmin_points;
  out.probe = nesting_probe(rep, out.wall_first, out.wall_last, popt);
  bool decay = out.probe.relation == NestingRelation::kMarginDecay;
  bool monotone = true;
  for (std::size_t i = 1; i < out.probe.margins.size(); ++i)
    if (out.probe.margins[i] > out.probe.margins[i - 1] + 1e-12)
      monotone = false;
  bool last_small = !out.probe.margins.empty() &&
                    std::abs(out.probe.margins.back()) < 1e-3;
  add_check(&out, "margin-decay", decay && monotone && last_small);

  out.certified = all_pass(out);
  return out;
}

}  // namespace projgeom
