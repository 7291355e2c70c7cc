// Projective geometry of reflection domains: wall functionals and polars,
// polyhedral inner approximations of the Vinberg domain, half-cones and
// nesting probes, duality pairing checks, the Hilbert metric, and the Sigma
// polytopes of the minimal domain.
//
// All certificates are exact-rational; floating point appears only in
// reported numeric views.  Inner approximations only grow with depth, so a
// nonnegative margin certifies membership in the true half-cone.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "racg/linprog.hpp"
#include "racg/representation.hpp"

namespace projgeom {

using vinberg::Rat;
using vinberg::RatMat;
using vinberg::RatRow;
using vinberg::RatVec;

struct WallGeometry {
  racg::Wall wall;
  RatRow alpha;  // sign-normalized: alpha <= 0 on the fundamental cone
  RatVec polar;  // alpha(polar) = 2
};

// Transport along the canonical itinerary ending at the wall:
// alpha = rho*(u) alpha_s, polar = rho(u) v_s, then sign normalization.
WallGeometry wall_geometry(const vinberg::SimplicialRep& rep,
                           const racg::Wall& wall);

// Exact sign of alpha_W(x).
int halfspace_side(const WallGeometry& geom, const RatVec& x);

// Orbit of the fundamental simplex vertices over the radius-`depth` ball.
struct DomainApprox {
  int depth = 0;
  std::vector<racg::NormalForm> chambers;
  std::vector<RatVec> vertices;     // ray-normalized, deduplicated
  std::vector<int> vertex_depth;    // first ball radius producing the vertex

  // Vertices on the hyperplane of `alpha`, restricted to depth <= max_depth.
  std::vector<RatVec> slice(const RatRow& alpha, int max_depth) const;
};

DomainApprox tile_domain(const vinberg::SimplicialRep& rep, int depth,
                         int depth_cap = 8);

// Multi-source variant: chambers within `depth` right-multiplication steps
// of any seed chamber; vertex depths are distances to the seed set.  Used
// to tile a corridor around a connecting geodesic between two walls.
DomainApprox corridor_domain(const vinberg::SimplicialRep& rep,
                             const std::vector<racg::NormalForm>& seeds,
                             int depth, int depth_cap = 8);

struct HalfConeApprox {
  WallGeometry geom;
  int sign = +1;
  int depth = 0;
  std::vector<RatVec> points;  // polar first, then wall-face data
};

// Inner approximation of Hc_sign(W) at the given depth: the polar together
// with all depth-N tile vertices on the wall hyperplane.  `enrichment` may
// carry additional exact closure points; those lying on the wall
// hyperplane are included.
HalfConeApprox halfcone_approx(const vinberg::SimplicialRep& rep,
                               const DomainApprox& base,
                               const racg::Wall& wall, int sign, int depth,
                               const std::vector<RatVec>& enrichment = {});

// ---------------------------------------------------------------------------
// Charts, membership, margins

// A functional strictly positive on all listed points (exact); nullopt when
// the points do not span a pointed cone.
std::optional<RatRow> find_chart(const std::vector<RatVec>& points);

// x scaled so chart(x) = 1; throws racg::DomainError when chart(x) <= 0.
RatVec chart_normalize(const RatRow& chart, const RatVec& x);

// Radial margin of p in the convex hull of `hull` relative to the interior
// reference point q (all chart-normalized): the largest t with
// q + (1+t)(p-q) still in the hull.  Nonnegative iff p lies in the hull.
// nullopt when the LP degenerates (unbounded chart direction).
std::optional<Rat> radial_margin(const std::vector<RatVec>& hull,
                                 const RatVec& q, const RatVec& p);

// ---------------------------------------------------------------------------
// Nesting probe

enum class NestingRelation {
  kCrossing,
  kNested,
  kStronglyNestedAtDepth,
  kMarginDecay,
  kInconclusive,
};

std::string to_string(NestingRelation r);

struct NestingProbeReport {
  NestingRelation relation = NestingRelation::kInconclusive;
  std::string note;
  int outer = 0;                  // 1 or 2: which argument bounds the outer cone
  std::vector<int> depths;
  std::vector<Rat> margins_exact;  // min inner-generator margin per depth
  std::vector<double> margins;
  double floor_value = 0.0;        // min margin over the trace (numeric)
};

struct ProbeOptions {
  int min_depth = 2;
  int max_depth = 6;
  double decay_tol = 1e-3;   // final margin at or below this: decay evidence
  double slack = 1e-12;      // monotonicity slack for the numeric view
  std::vector<RatVec> enrichment;  // extra exact closure points (ambient)
};

// Crossing test, combinatorial half-space nesting, then per-depth exact
// margins of the inner half-cone approximation inside the outer one.  Wall
// data comes from a corridor tiling around the two walls; the outer hull is
// augmented with the exact wall projections x - (alpha(x)/2) v of the inner
// points, which lie in the closed wall, so combinatorially nested pairs
// always report nonnegative margins.  The working chart is an interior
// functional of the co-half-cone Hc_-(W*) built from the dual minimal
// domain, which is positive on the whole closed outer half-cone.
// Pre: nonsingular Cartan matrix.
NestingProbeReport nesting_probe(const vinberg::SimplicialRep& rep,
                                 const racg::Wall& w1, const racg::Wall& w2,
                                 const ProbeOptions& opt = {});

// ---------------------------------------------------------------------------
// Duality

// The wall of the dual representation fixed by the dual reflection.
WallGeometry dual_wall(const vinberg::SimplicialRep& dual,
                       const racg::Wall& wall);

struct DualityReport {
  bool ok = false;
  int pairs = 0;
  Rat max_pairing;  // exact maximum of <w, x>; must be <= 0
};

struct MinDomainApprox {
  int depth = 0;
  std::vector<RatVec> points;  // orbit of the Sigma rays, ray-normalized
  std::vector<int> point_depth;
};

// Each generator functional of Hc_-(W*) at depth N must be nonpositive on
// every generator point of Hc_+(W) at depth N.  The co-side data is the
// dual polar plus the dual minimal-domain orbit points on the dual wall;
// the minimal domain of the dual representation lies inside Omega*, so
// these are exact closure data for Hc_-(W*).
DualityReport halfcone_duality_check(const vinberg::SimplicialRep& rep,
                                     const DomainApprox& base,
                                     const vinberg::SimplicialRep& dual,
                                     const MinDomainApprox& dual_min,
                                     const racg::Wall& wall, int depth);

// ---------------------------------------------------------------------------
// Hilbert metric

// Properly convex body given by exact generator points (conic hull) in a
// chart where all generators are strictly positive.
struct PolytopeBody {
  std::vector<RatVec> points;  // chart-normalized
  RatRow chart;
};

PolytopeBody make_polytope_body(const std::vector<RatVec>& generators);

// Hilbert distance between interior points (exact chord endpoints by LP,
// then the log cross-ratio).  Throws when a point is on or outside the
// boundary, or the body is not properly convex in the working chart.
double hilbert_distance(const PolytopeBody& body, const RatVec& x,
                        const RatVec& y);

// Closed-form Hilbert distance in the unit-ball model (affine coordinates).
double hilbert_distance_ball(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y);

// ---------------------------------------------------------------------------
// Sigma polytopes and the minimal domain

// Exact extreme rays of Sigma_{S'} = {x = sum_{t in S'} lambda_t v_t :
// lambda >= 0, alpha_s(x) <= 0 for all s}.
std::vector<RatVec> sigma_polytope(const vinberg::SimplicialRep& rep,
                                   racg::GenSet members);

MinDomainApprox min_domain_approx(const vinberg::SimplicialRep& rep, int depth,
                                  int depth_cap = 8);

// ---------------------------------------------------------------------------
// Diagnostics used by tests

// Lemma "half-spaces sit inside half-cones" at finite depth: every tile
// vertex strictly on the + side of W(s) decomposes exactly as
// x0 + (alpha(x)/2) v_s with x0 on the wall, and lies in the hull of the
// depth-N generators augmented by x0.
bool halfspace_in_halfcone_check(const vinberg::SimplicialRep& rep,
                                 const DomainApprox& base, int type,
                                 int depth);

}  // namespace projgeom
