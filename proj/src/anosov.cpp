#include "racg/anosov.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace anosov {

using racg::DomainError;

namespace {

// Fixed-precision GMP floats for singular values beyond double range
// (fixed precision so numeric_limits::epsilon is meaningful and the Jacobi
// sweeps terminate).
template <unsigned Digits>
using FixedFloat =
    boost::multiprecision::number<boost::multiprecision::gmp_float<Digits>,
                                  boost::multiprecision::et_off>;

template <unsigned Digits>
SingularReport svd_fixed(const RatMat& g) {
  using F = FixedFloat<Digits>;
  using FMat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(g.rows());
  FMat bm(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bm(i, j) = F(g(i, j));
  Eigen::JacobiSVD<FMat> svd(bm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= 0)
    throw racg::DomainError("singular_report: numerically singular input");
  SingularReport rep;
  rep.mu.resize(n);
  for (int i = 0; i < n; ++i)
    rep.mu(i) = log(sv(i)).template convert_to<double>();
  if (rep.mu(0) - rep.mu(1) > kGapThreshold) {
    rep.subspaces_defined = true;
    rep.unstable.resize(n);
    rep.stable_normal.resize(n);
    for (int i = 0; i < n; ++i) {
      rep.unstable(i) = svd.matrixU()(i, 0).template convert_to<double>();
      rep.stable_normal(i) = svd.matrixV()(i, 0).template convert_to<double>();
    }
  }
  if (rep.mu(n - 2) - rep.mu(n - 1) > kGapThreshold) {
    rep.bottom_defined = true;
    rep.expanding_hyperplane_normal.resize(n);
    for (int i = 0; i < n; ++i)
      rep.expanding_hyperplane_normal(i) =
          svd.matrixU()(i, n - 1).template convert_to<double>();
  }
  return rep;
}

// Exact base-2 exponent with 2^e <= |x| < 2^{e+1}.
long rat_exponent(const Rat& x) {
  auto num = numerator(x) < 0 ? decltype(numerator(x))(-numerator(x))
                              : numerator(x);
  auto den = denominator(x);
  long e = static_cast<long>(boost::multiprecision::msb(num)) -
           static_cast<long>(boost::multiprecision::msb(den));
  Rat two_e = e >= 0 ? Rat(boost::multiprecision::mpz_int(1) << e)
                     : Rat(1) / Rat(boost::multiprecision::mpz_int(1) << (-e));
  Rat ax = abs(x);
  if (ax < two_e) --e;
  else if (ax >= 2 * two_e) ++e;
  return e;
}

}  // namespace

ScaledMatrix scaled_double(const RatMat& m) {
  Rat maxabs = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat a = abs(m(i, j));
      if (a > maxabs) maxabs = a;
    }
  if (maxabs == 0) throw DomainError("scaled_double: zero matrix");
  // divide by 2^{e+1} so entries land in [-1, 1), the largest in [0.5, 1)
  long e = rat_exponent(maxabs) + 1;
  Rat two_e = e >= 0 ? Rat(boost::multiprecision::mpz_int(1) << e)
                     : Rat(1) / Rat(boost::multiprecision::mpz_int(1) << (-e));
  ScaledMatrix out;
  out.log_scale = static_cast<double>(e) * std::log(2.0);
  out.m.resize(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.m(i, j) = vinberg::to_double(Rat(m(i, j) / two_e));
  return out;
}

SingularReport singular_report(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw DomainError("singular_report: non-square");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0)
    throw DomainError("singular_report: numerically singular input");
  SingularReport rep;
  rep.mu.resize(sv.size());
  for (int i = 0; i < sv.size(); ++i) rep.mu(i) = std::log(sv(i));
  if (rep.mu(0) - rep.mu(1) > kGapThreshold) {
    rep.subspaces_defined = true;
    rep.unstable = svd.matrixU().col(0);
    rep.stable_normal = svd.matrixV().col(0);
  }
  const int dd = static_cast<int>(sv.size());
  if (rep.mu(dd - 2) - rep.mu(dd - 1) > kGapThreshold) {
    rep.bottom_defined = true;
    rep.expanding_hyperplane_normal = svd.matrixU().col(dd - 1);
  }
  return rep;
}

SingularReport singular_report(const RatMat& g) {
  Rat d = vinberg::det(g);
  if (d == 0) throw DomainError("singular_report: singular input");
  ScaledMatrix s = scaled_double(g);
  const int n = static_cast<int>(g.rows());

  // Dynamic range of the scaled singular values, from the exact determinant:
  // log sigma_min >= log|det_scaled| - (n-1) log sigma_max, sigma_max <= n.
  double log_det_scaled =
      static_cast<double>(rat_exponent(abs(d))) * std::log(2.0) -
      n * s.log_scale;
  double range = -(log_det_scaled - (n - 1) * std::log((double)n));
  if (range < 0) range = 0;

  if (range < 25.0) {  // comfortably inside double precision
    SingularReport rep = singular_report(s.m);
    rep.mu.array() += s.log_scale;
    return rep;
  }

  // High-precision SVD: precision covers the dynamic range plus headroom.
  unsigned digits = static_cast<unsigned>(range / std::log(10.0)) + 30;
  if (digits <= 50) return svd_fixed<50>(g);
  if (digits <= 150) return svd_fixed<150>(g);
  if (digits <= 400) return svd_fixed<400>(g);
  if (digits <= 1600) return svd_fixed<1600>(g);
  throw DomainError(
      "singular_report: dynamic range exceeds the supported precision");
}

Eigen::VectorXd mu_vector(const RatMat& g) { return singular_report(g).mu; }

AdditivityReport check_additivity(const RatMat& g, const RatMat& h1,
                                  const RatMat& h2, double tol) {
  RatMat prod = h1 * g * h2;
  Eigen::VectorXd lhs = mu_vector(prod) - mu_vector(g);
  AdditivityReport out;
  out.deviation = lhs.norm();
  out.bound = mu_vector(h1).norm() + mu_vector(h2).norm();
  out.violated = out.deviation > out.bound + tol;
  return out;
}

TransversalityReport check_transversality(const RatMat& g, const RatMat& h,
                                          double tol) {
  SingularReport rg = singular_report(g);
  SingularReport rh = singular_report(h);
  if (!rg.subspaces_defined || !rh.subspaces_defined)
    throw DomainError("check_transversality: gap below threshold");
  TransversalityReport out;
  double sin_theta = std::abs(rg.stable_normal.dot(rh.unstable));
  sin_theta = std::min(sin_theta, 1.0);
  out.theta = std::asin(sin_theta);
  if (sin_theta == 0.0) {
    out.vacuous = true;
    out.lhs = out.rhs = 0;
    out.violated = false;
    return out;
  }
  out.vacuous = false;
  RatMat gh = g * h;
  out.lhs = singular_report(gh).gap12();
  out.rhs = rg.gap12() + rh.gap12() + 2.0 * std::log(sin_theta);
  out.violated = out.lhs < out.rhs - tol;
  return out;
}

GapTrace gap_trace(const vinberg::SimplicialRep& rep, const racg::Word& word,
                   bool with_pairwise) {
  auto nf = racg::normalize(rep.sys, word);
  if (nf.length() != static_cast<int>(word.size()))
    throw DomainError("gap_trace: word is not geodesic");
  GapTrace t;
  t.word = word;
  const int L = static_cast<int>(word.size());
  RatMat p = vinberg::rat_identity(rep.dim());
  for (int n = 0; n <= L; ++n) {
    if (n > 0) p = p * rep.gen[word[n - 1]];
    SingularReport r = singular_report(p);
    t.mu.push_back(r.mu);
    t.unstable.push_back(r.subspaces_defined ? r.unstable
                                             : Eigen::VectorXd());
    t.stable_normal.push_back(r.subspaces_defined ? r.stable_normal
                                                  : Eigen::VectorXd());
    t.limit_hyperplane_normal.push_back(
        r.bottom_defined ? r.expanding_hyperplane_normal : Eigen::VectorXd());
  }
  if (with_pairwise) {
    const int d = rep.dim();
    t.pair_gap12 = Eigen::MatrixXd::Zero(L + 1, L + 1);
    t.pair_mu1d = Eigen::MatrixXd::Zero(L + 1, L + 1);
    for (int n = 0; n <= L; ++n) {
      RatMat q = vinberg::rat_identity(d);
      for (int m = n + 1; m <= L; ++m) {
        q = q * rep.gen[word[m - 1]];
        Eigen::VectorXd mu = mu_vector(q);
        t.pair_gap12(n, m) = mu(0) - mu(1);
        t.pair_mu1d(n, m) = mu(0) - mu(d - 1);
        // inverse: singular values reverse and invert
        t.pair_gap12(m, n) = mu(d - 2) - mu(d - 1);
        t.pair_mu1d(m, n) = mu(0) - mu(d - 1);
      }
    }
  }
  return t;
}

PowerScan power_scan(const vinberg::SimplicialRep& rep, const racg::Word& word,
                     int n_max) {
  PowerScan scan;
  scan.word = word;
  RatMat g = evaluate_word(rep, word);
  RatMat p = vinberg::rat_identity(rep.dim());
  scan.mu.push_back(mu_vector(p + RatMat::Zero(rep.dim(), rep.dim())));
  for (int n = 1; n <= n_max; ++n) {
    p = p * g;
    scan.mu.push_back(mu_vector(p));
  }
  return scan;
}

GapFit fit_gaps(const std::vector<GapSample>& samples, double b_cap) {
  if (samples.empty()) throw DomainError("fit_gaps: no samples");
  if (b_cap < 0) throw DomainError("fit_gaps: negative offset cap");
  GapFit fit;
  fit.samples = static_cast<int>(samples.size());
  double a = std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    if (s.len > 0) a = std::min(a, (s.gap + b_cap) / s.len);
  if (!std::isfinite(a)) a = 0;
  fit.a = std::max(a, 0.0);
  double b = 0;
  for (const auto& s : samples) b = std::max(b, fit.a * s.len - s.gap);
  fit.b = b;
  // feasible on its own input by construction
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    worst = std::min(worst, s.gap - (fit.a * s.len - fit.b));
  fit.worst_slack = worst;
  if (fit.worst_slack < -1e-12)
    throw DomainError("fit_gaps: infeasible fit (internal error)");
  return fit;
}

std::vector<GapSample> trace_samples(const std::vector<GapTrace>& traces) {
  std::vector<GapSample> out;
  for (const auto& t : traces)
    for (std::size_t n = 0; n < t.mu.size(); ++n)
      out.push_back({static_cast<double>(n), t.mu[n](0) - t.mu[n](1)});
  return out;
}

std::vector<GapSample> scan_samples(const PowerScan& scan) {
  std::vector<GapSample> out;
  for (std::size_t n = 0; n < scan.mu.size(); ++n)
    out.push_back({static_cast<double>(n), scan.mu[n](0) - scan.mu[n](1)});
  return out;
}

RegularityReport uniform_regularity_check(const std::vector<GapTrace>& traces,
                                          double a, double b) {
  RegularityReport out;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& t : traces) {
    if (t.pair_gap12.size() == 0)
      throw DomainError("uniform_regularity_check: pairwise data missing");
    const int n = static_cast<int>(t.pair_gap12.rows());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double slack = t.pair_gap12(i, j) - (a * t.pair_mu1d(i, j) - b);
        ++out.pairs;
        if (slack < 0) ++out.violations;
        worst = std::min(worst, slack);
      }
  }
  out.worst_slack = out.pairs ? worst : 0;
  out.ok = out.violations == 0;
  return out;
}

namespace {

double angle_between_lines(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  double c = std::abs(u.normalized().dot(v.normalized()));
  return std::acos(std::min(c, 1.0));
}

// least-squares slope of log(y) against n, ignoring zero entries
double decay_rate(const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 0; n < y.size(); ++n)
    if (y[n] > 1e-300) pts.push_back({(double)n, std::log(y[n])});
  if (pts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, yy] : pts) {
    sx += x;
    sy += yy;
    sxx += x * x;
    sxy += x * yy;
  }
  double n = static_cast<double>(pts.size());
  double denom = n * sxx - sx * sx;
  if (denom == 0) return 0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

ConvergenceReport convergence_check(const GapTrace& trace, double final_tol) {
  ConvergenceReport out;
  if (trace.limit_hyperplane_normal.size() != trace.unstable.size())
    throw DomainError("convergence_check: trace lacks hyperplane data");
  for (std::size_t n = 0; n + 1 < trace.unstable.size(); ++n) {
    if (trace.unstable[n].size() == 0 || trace.unstable[n + 1].size() == 0)
      continue;
    if (trace.limit_hyperplane_normal[n].size() == 0 ||
        trace.limit_hyperplane_normal[n + 1].size() == 0)
      continue;
    out.unstable_step.push_back(
        angle_between_lines(trace.unstable[n], trace.unstable[n + 1]));
    out.stable_step.push_back(
        angle_between_lines(trace.limit_hyperplane_normal[n],
                            trace.limit_hyperplane_normal[n + 1]));
  }
  if (out.unstable_step.empty())
    throw DomainError("convergence_check: subspaces undefined along the trace");
  out.unstable_rate = decay_rate(out.unstable_step);
  out.stable_rate = decay_rate(out.stable_step);
  out.final_unstable_step = out.unstable_step.back();
  out.final_stable_step = out.stable_step.back();
  out.certified = out.final_unstable_step < final_tol &&
                  out.final_stable_step < final_tol;
  return out;
}

HilbertGapReport hilbert_gap_bound_check(const std::vector<RatVec>& omega1,
                                         const std::vector<RatVec>& omega2,
                                         const RatMat& g) {
  HilbertGapReport out;
  auto body2 = projgeom::make_polytope_body(omega2);
  // strict containment: positive radial margin for each image generator
  RatVec q = RatVec::Zero(body2.points[0].size());
  for (const auto& p : body2.points) q += p;
  q /= Rat((int)body2.points.size());
  std::vector<RatVec> images;
  for (const auto& p : omega1) {
    RatVec gp = g * p;
    try {
      RatVec cn = projgeom::chart_normalize(body2.chart, gp);
      auto m = projgeom::radial_margin(body2.points, q, cn);
      if (!m || !(*m > 0)) {
        out.precondition_ok = false;
        return out;
      }
    } catch (const DomainError&) {
      out.precondition_ok = false;  // image escapes the chart entirely
      return out;
    }
    images.push_back(gp);
  }
  out.precondition_ok = true;
  double diam = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      diam = std::max(diam,
                      projgeom::hilbert_distance(body2, images[i], images[j]));
  out.diam = diam;
  out.mu12 = singular_report(g).gap12();
  out.bound_rhs = diam > 0 ? -std::log(diam)
                           : std::numeric_limits<double>::infinity();
  out.empirical_d = std::max(0.0, out.bound_rhs - out.mu12);
  return out;
}

double point_to_cone_angle(const Eigen::VectorXd& u,
                           const Eigen::MatrixXd& cone) {
  if (cone.cols() == 0) return M_PI / 2;
  // Lawson-Hanson NNLS: min || u - cone x ||, x >= 0
  auto nnls = [&](const Eigen::VectorXd& target) {
    const int m = static_cast<int>(cone.cols());
    std::vector<char> passive(m, 0);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    for (int iter = 0; iter < 3 * m + 30; ++iter) {
      Eigen::VectorXd w = cone.transpose() * (target - cone * x);
      int best = -1;
      double best_w = 1e-12;
      for (int j = 0; j < m; ++j)
        if (!passive[j] && w(j) > best_w) {
          best = j;
          best_w = w(j);
        }
      if (best < 0) break;
      passive[best] = 1;
      while (true) {
        std::vector<int> idx;
        for (int j = 0; j < m; ++j)
          if (passive[j]) idx.push_back(j);
        Eigen::MatrixXd sub(cone.rows(), idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
          sub.col(k) = cone.col(idx[k]);
        Eigen::VectorXd z =
            sub.colPivHouseholderQr().solve(target);
        bool all_pos = true;
        for (int k = 0; k < z.size(); ++k)
          if (z(k) <= 0) all_pos = false;
        if (all_pos) {
          x.setZero();
          for (std::size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(k);
          break;
        }
        // step back to the feasibility boundary
        double alpha = 1.0;
        for (std::size_t k = 0; k < idx.size(); ++k)
          if (z(k) <= 0) {
            double xi = x(idx[k]);
            if (xi - z(k) > 0) alpha = std::min(alpha, xi / (xi - z(k)));
          }
        for (std::size_t k = 0; k < idx.size(); ++k) {
          x(idx[k]) += alpha * (z(k) - x(idx[k]));
          if (x(idx[k]) <= 1e-14) {
            x(idx[k]) = 0;
            passive[idx[k]] = 0;
          }
        }
      }
    }
    return Eigen::VectorXd(cone * x);
  };
  double best = M_PI / 2;
  for (double sign : {1.0, -1.0}) {
    Eigen::VectorXd proj = nnls(sign * u.normalized());
    if (proj.norm() > 1e-12)
      best = std::min(best, angle_between_lines(u, proj));
  }
  return best;
}

SubspaceLocalityReport halfcone_subspace_check(
    const vinberg::SimplicialRep& rep, const racg::Word& word, int k,
    double eps, int depth) {
  SubspaceLocalityReport out;
  auto nf = racg::normalize(rep.sys, word);
  if (nf.length() != static_cast<int>(word.size()))
    throw DomainError("halfcone_subspace_check: word is not geodesic");
  if (nf.length() == 0) return out;  // identity: UNDEFINED
  if (k < 1 || k > nf.length())
    throw DomainError("halfcone_subspace_check: wall index out of range");
  RatMat g = evaluate_word(rep, word);
  SingularReport sr = singular_report(g);
  out.gap12 = sr.gap12();
  if (!sr.subspaces_defined) return out;  // UNDEFINED
  out.defined = true;

  // depth-N approximation of Hc_+(W_k) along the itinerary from the identity
  racg::Word prefix(word.begin(), word.begin() + (k - 1));
  auto wall = racg::make_wall(rep.sys, racg::normalize(rep.sys, prefix),
                              word[k - 1]);
  std::vector<racg::NormalForm> seeds;
  {
    racg::Word p;
    seeds.push_back(racg::normalize(rep.sys, p));
    for (int s : word) {
      p.push_back(s);
      seeds.push_back(racg::normalize(rep.sys, p));
    }
  }
  auto base = projgeom::corridor_domain(rep, seeds, depth, std::max(depth, 8));
  auto hc = projgeom::halfcone_approx(rep, base, wall, +1, depth);
  Eigen::MatrixXd cone(rep.dim(), hc.points.size());
  for (std::size_t i = 0; i < hc.points.size(); ++i)
    cone.col(i) = vinberg::to_double_vec(hc.points[i]);
  out.dist_to_halfcone = point_to_cone_angle(sr.unstable, cone);
  out.within_eps = out.dist_to_halfcone <= eps;

  racg::GenSet sup = racg::support(nf);
  racg::GenSet all = (racg::GenSet(1) << rep.dim()) - 1;
  if (sup != all && sup != 0) {
    out.proper_support = true;
    auto res = restrict_rep(rep, sup);
    Eigen::MatrixXd bt = vinberg::to_double(res.basis_t);
    Eigen::MatrixXd bp = vinberg::to_double(res.basis_perp);
    auto qr_t = Eigen::HouseholderQR<Eigen::MatrixXd>(bt);
    auto qr_p = Eigen::HouseholderQR<Eigen::MatrixXd>(bp);
    Eigen::MatrixXd qt = qr_t.householderQ() *
                         Eigen::MatrixXd::Identity(rep.dim(), bt.cols());
    Eigen::MatrixXd qp = qr_p.householderQ() *
                         Eigen::MatrixXd::Identity(rep.dim(), bp.cols());
    Eigen::VectorXd u = sr.unstable;
    out.dist_to_vt = std::asin(std::min((u - qt * (qt.transpose() * u)).norm(), 1.0));
    out.dist_to_vt_perp =
        std::asin(std::min((u - qp * (qp.transpose() * u)).norm(), 1.0));
    // principal angles between V_T and V_T^perp
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qt.transpose() * qp);
    double cmax = svd.singularValues()(0);
    out.transversality_angle = std::acos(std::min(cmax, 1.0));
  }
  return out;
}

}  // namespace anosov
