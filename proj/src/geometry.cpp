#include "racg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace projgeom {

using racg::DomainError;

WallGeometry wall_geometry(const vinberg::SimplicialRep& rep,
                           const racg::Wall& wall) {
  WallGeometry g;
  g.wall = wall;
  const int s = wall.type;
  RatMat u = evaluate(rep, wall.prefix);
  RatMat u_inv = evaluate(rep, racg::invert(rep.sys, wall.prefix));
  g.alpha = rep.alpha.row(s) * u_inv;  // rho*(u) alpha_s
  g.polar = u * rep.v.col(s);
  // Sign convention: alpha <= 0 on the fundamental cone.
  RatVec x0 = interior_point(rep);
  Rat at = g.alpha * x0;
  if (at == 0) throw DomainError("wall_geometry: degenerate sign probe");
  if (at > 0) {
    g.alpha = -g.alpha;
    g.polar = -g.polar;
  }
  if (Rat(g.alpha * g.polar) != 2)
    throw DomainError("wall_geometry: alpha(polar) != 2");
  // The reflection identity id - polar (x) alpha = rho(u s u^-1).
  RatMat refl = vinberg::rat_identity(rep.dim()) - g.polar * g.alpha;
  if ((refl - evaluate(rep, wall.reflection)).cwiseAbs().sum() != 0)
    throw DomainError("wall_geometry: transported reflection mismatch");
  return g;
}

int halfspace_side(const WallGeometry& geom, const RatVec& x) {
  Rat v = geom.alpha * x;
  if (v > 0) return +1;
  if (v < 0) return -1;
  return 0;
}

std::vector<RatVec> DomainApprox::slice(const RatRow& alpha,
                                        int max_depth) const {
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertex_depth[i] > max_depth) continue;
    if (Rat(alpha * vertices[i]) == 0) out.push_back(vertices[i]);
  }
  return out;
}

DomainApprox tile_domain(const vinberg::SimplicialRep& rep, int depth,
                         int depth_cap) {
  if (depth > depth_cap)
    throw DomainError("tile depth " + std::to_string(depth) + " exceeds cap " +
                      std::to_string(depth_cap));
  DomainApprox da;
  da.depth = depth;
  const RatMat rays = fundamental_rays(rep);
  const int d = rep.dim();

  std::unordered_map<std::string, int> seen;
  auto add_vertex = [&](const RatVec& v, int at_depth) {
    RatVec n = vinberg::normalize_ray(v);
    auto key = vinberg::vec_key(n);
    if (seen.emplace(key, (int)da.vertices.size()).second) {
      da.vertices.push_back(std::move(n));
      da.vertex_depth.push_back(at_depth);
    }
  };

  struct Chamber {
    racg::NormalForm nf;
    RatMat mat;
  };
  std::vector<Chamber> frontier{{racg::normalize(rep.sys, {}),
                                 vinberg::rat_identity(d)}};
  std::unordered_map<std::size_t, std::vector<racg::NormalForm>> chamber_seen;
  auto chamber_known = [&](const racg::NormalForm& nf) {
    auto& bucket = chamber_seen[nf.hash()];
    for (const auto& other : bucket)
      if (other == nf) return true;
    bucket.push_back(nf);
    return false;
  };
  chamber_known(frontier[0].nf);
  da.chambers.push_back(frontier[0].nf);
  for (int j = 0; j < d; ++j) add_vertex(rays.col(j), 0);

  for (int r = 1; r <= depth; ++r) {
    std::vector<Chamber> next;
    for (const auto& ch : frontier) {
      for (int s = 0; s < d; ++s) {
        racg::NormalForm child =
            racg::multiply(rep.sys, ch.nf, racg::normalize(rep.sys, {s}));
        if (child.length() != r || chamber_known(child)) continue;
        RatMat m = ch.mat * rep.gen[s];
        for (int j = 0; j < d; ++j) add_vertex(m * rays.col(j), r);
        next.push_back({child, std::move(m)});
      }
    }
    for (const auto& ch : next) da.chambers.push_back(ch.nf);
    frontier = std::move(next);
  }
  std::sort(da.chambers.begin(), da.chambers.end());
  return da;
}

DomainApprox corridor_domain(const vinberg::SimplicialRep& rep,
                             const std::vector<racg::NormalForm>& seeds,
                             int depth, int depth_cap) {
  if (depth > depth_cap)
    throw DomainError("corridor depth " + std::to_string(depth) +
                      " exceeds cap " + std::to_string(depth_cap));
  DomainApprox da;
  da.depth = depth;
  const RatMat rays = fundamental_rays(rep);
  const int d = rep.dim();

  std::unordered_map<std::string, int> seen;
  auto add_vertex = [&](const RatVec& v, int at_depth) {
    RatVec n = vinberg::normalize_ray(v);
    auto key = vinberg::vec_key(n);
    if (seen.emplace(key, (int)da.vertices.size()).second) {
      da.vertices.push_back(std::move(n));
      da.vertex_depth.push_back(at_depth);
    }
  };

  struct Chamber {
    racg::NormalForm nf;
    RatMat mat;
  };
  std::unordered_map<std::size_t, std::vector<racg::NormalForm>> chamber_seen;
  auto chamber_known = [&](const racg::NormalForm& nf) {
    auto& bucket = chamber_seen[nf.hash()];
    for (const auto& other : bucket)
      if (other == nf) return true;
    bucket.push_back(nf);
    return false;
  };

  std::vector<Chamber> frontier;
  for (const auto& seed : seeds) {
    if (chamber_known(seed)) continue;
    Chamber ch{seed, evaluate(rep, seed)};
    for (int j = 0; j < d; ++j) add_vertex(ch.mat * rays.col(j), 0);
    da.chambers.push_back(seed);
    frontier.push_back(std::move(ch));
  }
  for (int r = 1; r <= depth; ++r) {
    std::vector<Chamber> next;
    for (const auto& ch : frontier) {
      for (int s = 0; s < d; ++s) {
        racg::NormalForm child =
            racg::multiply(rep.sys, ch.nf, racg::normalize(rep.sys, {s}));
        if (chamber_known(child)) continue;
        RatMat m = ch.mat * rep.gen[s];
        for (int j = 0; j < d; ++j) add_vertex(m * rays.col(j), r);
        da.chambers.push_back(child);
        next.push_back({child, std::move(m)});
      }
    }
    frontier = std::move(next);
  }
  std::sort(da.chambers.begin(), da.chambers.end());
  return da;
}

HalfConeApprox halfcone_approx(const vinberg::SimplicialRep& rep,
                               const DomainApprox& base,
                               const racg::Wall& wall, int sign, int depth,
                               const std::vector<RatVec>& enrichment) {
  if (depth > base.depth)
    throw DomainError("halfcone depth exceeds the base tiling depth");
  HalfConeApprox hc;
  hc.geom = wall_geometry(rep, wall);
  hc.sign = sign;
  hc.depth = depth;
  hc.points.push_back(sign > 0 ? hc.geom.polar : RatVec(-hc.geom.polar));
  for (const auto& x : base.slice(hc.geom.alpha, depth))
    hc.points.push_back(x);
  for (const auto& p : enrichment)
    if (Rat(hc.geom.alpha * p) == 0)
      hc.points.push_back(vinberg::normalize_ray(p));
  return hc;
}

std::optional<RatRow> find_chart(const std::vector<RatVec>& points) {
  return linprog::positive_functional(points);
}

RatVec chart_normalize(const RatRow& chart, const RatVec& x) {
  Rat c = chart * x;
  if (c <= 0) throw DomainError("chart_normalize: point not in the chart");
  return x / c;
}

std::optional<Rat> radial_margin(const std::vector<RatVec>& hull,
                                 const RatVec& q, const RatVec& p) {
  const int d = static_cast<int>(q.size());
  const int m = static_cast<int>(hull.size());
  RatVec dir = p - q;
  if (dir.cwiseAbs().sum() == 0) return Rat(1000000);  // p == q: deep inside
  // max mu:  sum lambda_i g_i - mu dir = q,  lambda >= 0, mu >= 0.
  RatMat a(d, m + 1);
  for (int i = 0; i < m; ++i) a.col(i) = hull[i];
  a.col(m) = -dir;
  RatVec c = RatVec::Zero(m + 1);
  c(m) = 1;
  auto res = linprog::maximize(a, q, c);
  if (res.status == linprog::Status::kUnbounded) return std::nullopt;
  if (res.status == linprog::Status::kInfeasible)
    throw DomainError("radial_margin: reference point outside the hull");
  return Rat(res.value - 1);
}

std::string to_string(NestingRelation r) {
  switch (r) {
    case NestingRelation::kCrossing: return "CROSSING";
    case NestingRelation::kNested: return "NESTED";
    case NestingRelation::kStronglyNestedAtDepth:
      return "STRONGLY_NESTED_AT_DEPTH";
    case NestingRelation::kMarginDecay: return "MARGIN_DECAY";
    case NestingRelation::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// Chambers along the geodesic from the identity to the far side of a wall.
void wall_corridor_seeds(const racg::CoxeterSystem& sys, const racg::Wall& w,
                         std::vector<racg::NormalForm>* seeds) {
  racg::Word full = w.prefix.letters();
  full.push_back(w.type);
  racg::Word p;
  seeds->push_back(racg::normalize(sys, p));
  for (int s : full) {
    p.push_back(s);
    seeds->push_back(racg::normalize(sys, p));
  }
}

}  // namespace

NestingProbeReport nesting_probe(const vinberg::SimplicialRep& rep,
                                 const racg::Wall& w1, const racg::Wall& w2,
                                 const ProbeOptions& opt) {
  NestingProbeReport rp;
  if (w1 == w2) throw DomainError("nesting_probe: identical walls");
  if (racg::walls_cross(rep.sys, w1, w2)) {
    rp.relation = NestingRelation::kCrossing;
    return rp;
  }
  const racg::Wall* outer = nullptr;
  const racg::Wall* inner = nullptr;
  if (racg::separates_identity_from(rep.sys, w1, w2)) {
    outer = &w1;
    inner = &w2;
    rp.outer = 1;
  } else if (racg::separates_identity_from(rep.sys, w2, w1)) {
    outer = &w2;
    inner = &w1;
    rp.outer = 2;
  } else {
    rp.relation = NestingRelation::kInconclusive;
    rp.note = "disjoint walls with the identity chamber between them";
    return rp;
  }

  std::vector<racg::NormalForm> seeds;
  wall_corridor_seeds(rep.sys, *outer, &seeds);
  wall_corridor_seeds(rep.sys, *inner, &seeds);
  const int max_depth = opt.max_depth;
  DomainApprox base =
      corridor_domain(rep, seeds, max_depth, std::max(max_depth, 8));

  HalfConeApprox out_max =
      halfcone_approx(rep, base, *outer, +1, max_depth, opt.enrichment);
  HalfConeApprox in_max =
      halfcone_approx(rep, base, *inner, +1, max_depth, opt.enrichment);

  // A point p with alpha1(p) >= 0 lies in hull(wall slice, polar) iff its
  // wall projection p - (alpha1(p)/2) v1 lies in the cone of the slice (the
  // polar coefficient is forced by alpha1).  Margins are therefore measured
  // on the projections inside the wall-slice cone.
  const RatRow& a1 = out_max.geom.alpha;
  const RatVec& v1 = out_max.geom.polar;
  auto project = [&](const RatVec& x) {
    return RatVec(x - (Rat(a1 * x) / 2) * v1);
  };

  std::vector<RatVec> all;  // every point a chart must be positive on
  for (std::size_t i = 1; i < out_max.points.size(); ++i)
    all.push_back(out_max.points[i]);
  for (const auto& x : in_max.points) {
    RatVec pr = vinberg::normalize_ray(project(x));
    if (pr.cwiseAbs().sum() != 0) all.push_back(pr);
  }

  // Chart: minus an interior point of the dual minimal domain is strictly
  // positive on the closure of the Tits cone, hence on all wall data.
  std::optional<RatRow> chart;
  {
    auto dual = dual_rep(rep);
    MinDomainApprox dmin = min_domain_approx(dual, 2, 12);
    auto positive_on_all = [&](const RatRow& c) {
      for (const auto& p : all)
        if (Rat(c * p) <= 0) return false;
      return true;
    };
    if (!dmin.points.empty()) {
      RatVec z = RatVec::Zero(rep.dim());
      for (const auto& p : dmin.points) z += p;
      RatRow cand = (-z).transpose();
      if (positive_on_all(cand)) chart = cand;
    }
    if (!chart && static_cast<int>(all.size()) <= 600) chart = find_chart(all);
  }
  if (!chart) {
    rp.relation = NestingRelation::kInconclusive;
    rp.note = "no chart positive on the wall data";
    return rp;
  }

  // Fixed interior reference inside the minimal-depth wall slice.
  HalfConeApprox out_min =
      halfcone_approx(rep, base, *outer, +1, std::min(opt.min_depth, max_depth),
                      opt.enrichment);
  if (out_min.points.size() < 2) {
    rp.relation = NestingRelation::kInconclusive;
    rp.note = "outer wall has no face data at the minimum depth";
    return rp;
  }
  RatVec q = RatVec::Zero(rep.dim());
  for (std::size_t i = 1; i < out_min.points.size(); ++i)
    q += chart_normalize(*chart, out_min.points[i]);
  q /= Rat((int)out_min.points.size() - 1);

  for (int depth = std::min(opt.min_depth, max_depth); depth <= max_depth;
       ++depth) {
    HalfConeApprox oc =
        halfcone_approx(rep, base, *outer, +1, depth, opt.enrichment);
    HalfConeApprox ic =
        halfcone_approx(rep, base, *inner, +1, depth, opt.enrichment);
    std::vector<RatVec> hull;  // the wall-slice cone, chart-normalized
    hull.reserve(oc.points.size());
    for (std::size_t i = 1; i < oc.points.size(); ++i)
      hull.push_back(chart_normalize(*chart, oc.points[i]));
    std::optional<Rat> worst;
    for (const auto& x : ic.points) {
      Rat height = a1 * x;
      Rat m_val;
      if (height < 0) {
        m_val = Rat(-1);  // wrong side of the outer wall
      } else {
        RatVec pr = project(x);
        if (pr.cwiseAbs().sum() == 0) continue;  // x on the polar ray
        auto m = radial_margin(hull, q, chart_normalize(*chart, pr));
        if (!m) {
          rp.relation = NestingRelation::kInconclusive;
          rp.note = "margin LP unbounded (chart degeneracy)";
          return rp;
        }
        m_val = *m;
      }
      if (!worst || m_val < *worst) worst = m_val;
    }
    rp.depths.push_back(depth);
    rp.margins_exact.push_back(worst ? *worst : Rat(0));
    rp.margins.push_back(vinberg::to_double(rp.margins_exact.back()));
  }

  rp.floor_value = rp.margins.empty()
                       ? 0.0
                       : *std::min_element(rp.margins.begin(), rp.margins.end());
  bool nonincreasing = true;
  for (std::size_t i = 1; i < rp.margins.size(); ++i)
    if (rp.margins[i] > rp.margins[i - 1] + opt.slack) nonincreasing = false;
  const double last = rp.margins.empty() ? 0.0 : rp.margins.back();

  if (!rp.margins.empty() && rp.floor_value > opt.decay_tol)
    rp.relation = NestingRelation::kStronglyNestedAtDepth;
  else if (!rp.margins.empty() && nonincreasing && last <= opt.decay_tol &&
           last >= -opt.decay_tol)
    rp.relation = NestingRelation::kMarginDecay;
  else
    rp.relation = NestingRelation::kNested;
  return rp;
}

WallGeometry dual_wall(const vinberg::SimplicialRep& dual,
                       const racg::Wall& wall) {
  return wall_geometry(dual, wall);
}

DualityReport halfcone_duality_check(const vinberg::SimplicialRep& rep,
                                     const DomainApprox& base,
                                     const vinberg::SimplicialRep& dual,
                                     const MinDomainApprox& dual_min,
                                     const racg::Wall& wall, int depth) {
  HalfConeApprox primal = halfcone_approx(rep, base, wall, +1, depth);
  WallGeometry gd = wall_geometry(dual, wall);
  std::vector<RatVec> co;
  co.push_back(-gd.polar);
  for (std::size_t i = 0; i < dual_min.points.size(); ++i) {
    if (dual_min.point_depth[i] > depth) continue;
    if (Rat(gd.alpha * dual_min.points[i]) == 0)
      co.push_back(dual_min.points[i]);
  }
  DualityReport out;
  out.max_pairing = Rat(-1);
  for (const auto& w : co) {
    for (const auto& x : primal.points) {
      Rat pairing = w.dot(x);
      ++out.pairs;
      if (out.pairs == 1 || pairing > out.max_pairing)
        out.max_pairing = pairing;
    }
  }
  out.ok = out.pairs > 0 && out.max_pairing <= 0;
  return out;
}

PolytopeBody make_polytope_body(const std::vector<RatVec>& generators) {
  auto chart = find_chart(generators);
  if (!chart)
    throw DomainError("polytope body: generators do not span a pointed cone");
  PolytopeBody body;
  body.chart = *chart;
  for (const auto& g : generators)
    body.points.push_back(chart_normalize(*chart, g));
  return body;
}

namespace {

// Largest t with x + t(y-x) inside the chart-normalized hull.
Rat chord_extent(const PolytopeBody& body, const RatVec& x, const RatVec& y,
                 bool forward) {
  const int d = static_cast<int>(x.size());
  const int m = static_cast<int>(body.points.size());
  RatVec dir = y - x;
  RatMat a(d, m + 1);
  for (int i = 0; i < m; ++i) a.col(i) = body.points[i];
  a.col(m) = forward ? RatVec(-dir) : RatVec(dir);
  RatVec c = RatVec::Zero(m + 1);
  c(m) = 1;
  auto res = linprog::maximize(a, x, c);
  if (res.status == linprog::Status::kUnbounded)
    throw DomainError("hilbert: body is not properly convex in the chart");
  if (res.status == linprog::Status::kInfeasible)
    throw DomainError("hilbert: point outside the body");
  return forward ? res.value : Rat(-res.value);
}

}  // namespace

double hilbert_distance(const PolytopeBody& body, const RatVec& x,
                        const RatVec& y) {
  RatVec cx = chart_normalize(body.chart, x);
  RatVec cy = chart_normalize(body.chart, y);
  if ((cx - cy).cwiseAbs().sum() == 0) return 0.0;
  Rat tp = chord_extent(body, cx, cy, true);   // boundary beyond y
  Rat tm = chord_extent(body, cx, cy, false);  // boundary behind x
  if (!(tm < 0) || !(tp > 1))
    throw DomainError("hilbert: point on or outside the boundary");
  // order a, x, y, b along the chord; affine parameters tm < 0 < 1 < tp
  Rat cross = ((1 - tm) * tp) / ((-tm) * (tp - 1));
  return 0.5 * std::log(vinberg::to_double(cross));
}

double hilbert_distance_ball(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y) {
  if (x.norm() >= 1.0 || y.norm() >= 1.0)
    throw DomainError("hilbert ball: point outside the open unit ball");
  Eigen::VectorXd dir = y - x;
  double nd = dir.norm();
  if (nd == 0.0) return 0.0;
  // |x + t dir|^2 = 1
  double a = dir.squaredNorm();
  double b = 2.0 * x.dot(dir);
  double c = x.squaredNorm() - 1.0;
  double disc = std::sqrt(b * b - 4 * a * c);
  double tm = (-b - disc) / (2 * a);
  double tp = (-b + disc) / (2 * a);
  double cross = ((1 - tm) * tp) / ((-tm) * (tp - 1));
  return 0.5 * std::log(cross);
}

std::vector<RatVec> sigma_polytope(const vinberg::SimplicialRep& rep,
                                   racg::GenSet members) {
  const int n = rep.dim();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if ((members >> i) & 1u) idx.push_back(i);
  const int k = static_cast<int>(idx.size());
  if (k == 0) return {};

  // Constraints on lambda: A_{S,S'} lambda <= 0 and -lambda <= 0.
  RatMat rows(n + k, k);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < k; ++c) rows(r, c) = rep.cartan(r, idx[c]);
  for (int c = 0; c < k; ++c) {
    for (int j = 0; j < k; ++j) rows(n + c, j) = 0;
    rows(n + c, c) = -1;
  }

  // Extreme rays: kernels of (k-1)-subsets of constraint rows that satisfy
  // every constraint.
  std::vector<RatVec> rays;
  std::unordered_map<std::string, bool> seen;
  const int m = n + k;
  std::vector<int> choose(k - 1 > 0 ? k - 1 : 0);
  auto emit = [&](const RatVec& lambda) {
    // feasibility of the candidate ray
    for (int r = 0; r < m; ++r)
      if (Rat(rows.row(r) * lambda) > 0) return;
    if (lambda.cwiseAbs().sum() == 0) return;
    RatVec x = RatVec::Zero(n);
    for (int c = 0; c < k; ++c) x += lambda(c) * rep.v.col(idx[c]);
    RatVec nx = vinberg::normalize_ray(x);
    if (nx.cwiseAbs().sum() == 0) return;
    if (seen.emplace(vinberg::vec_key(nx), true).second) rays.push_back(nx);
  };
  if (k == 1) {
    RatVec lambda(1);
    lambda << 1;
    emit(lambda);
  } else {
    // iterate subsets of size k-1 of the m rows
    std::vector<int> comb(k - 1);
    for (int i = 0; i < k - 1; ++i) comb[i] = i;
    while (true) {
      RatMat sub(k - 1, k);
      for (int i = 0; i < k - 1; ++i) sub.row(i) = rows.row(comb[i]);
      RatMat kb = vinberg::kernel_basis(sub);
      if (kb.cols() == 1) {
        emit(RatVec(kb.col(0)));
        emit(RatVec(-kb.col(0)));
      }
      // next combination
      int i = k - 2;
      while (i >= 0 && comb[i] == m - (k - 1) + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(rays.begin(), rays.end(), [](const RatVec& a, const RatVec& b) {
    return vinberg::vec_key(a) < vinberg::vec_key(b);
  });
  return rays;
}

MinDomainApprox min_domain_approx(const vinberg::SimplicialRep& rep, int depth,
                                  int depth_cap) {
  if (depth > depth_cap)
    throw DomainError("min-domain depth exceeds cap");
  racg::GenSet all = (racg::GenSet(1) << rep.dim()) - 1;
  auto rays = sigma_polytope(rep, all);
  MinDomainApprox md;
  md.depth = depth;
  std::unordered_map<std::string, bool> seen;
  auto add = [&](const RatVec& v, int at_depth) {
    RatVec nv = vinberg::normalize_ray(v);
    if (seen.emplace(vinberg::vec_key(nv), true).second) {
      md.points.push_back(nv);
      md.point_depth.push_back(at_depth);
    }
  };
  auto ball = racg::enumerate_ball(rep.sys, depth, std::max(depth, 12));
  for (const auto& g : ball) {
    RatMat m = evaluate(rep, g);
    for (const auto& r : rays) add(m * r, g.length());
  }
  return md;
}

bool halfspace_in_halfcone_check(const vinberg::SimplicialRep& rep,
                                 const DomainApprox& base, int type,
                                 int depth) {
  racg::Wall w = racg::make_wall(rep.sys, racg::normalize(rep.sys, {}), type);
  HalfConeApprox hc = halfcone_approx(rep, base, w, +1, depth);
  const RatRow& alpha = hc.geom.alpha;
  const RatVec& v = hc.geom.polar;
  for (std::size_t i = 0; i < base.vertices.size(); ++i) {
    if (base.vertex_depth[i] > depth) continue;
    const RatVec& x = base.vertices[i];
    Rat ax = alpha * x;
    if (!(ax > 0)) continue;
    RatVec x0 = x - (ax / 2) * v;
    if (Rat(alpha * x0) != 0) return false;  // exact wall decomposition
    std::vector<RatVec> gens = hc.points;
    gens.push_back(x0);
    if (!linprog::in_conic_hull(gens, x)) return false;
  }
  return true;
}

}  // namespace projgeom
