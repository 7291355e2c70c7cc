// Numerical singular-value machinery: mu-vectors and gaps, stable and
// unstable subspaces, additivity/transversality estimates, geodesic gap
// traces, (A,B)-gap fitting, regularity and convergence diagnostics, and
// the Hilbert-metric gap bound.
//
// Matrices are carried exactly until the SVD call; long products are
// rescaled by a power of two (gaps are scale-invariant, absolute mu values
// are shifted back).

#pragma once

#include <optional>
#include <vector>

#include "racg/geometry.hpp"
#include "racg/representation.hpp"

namespace anosov {

using vinberg::Rat;
using vinberg::RatMat;
using vinberg::RatVec;

inline constexpr double kGapThreshold = 1e-8;  // below: subspaces undefined

struct ScaledMatrix {
  Eigen::MatrixXd m;   // entries scaled into [-1, 1]
  double log_scale;    // original = 2^k m, log_scale = k log 2
};

ScaledMatrix scaled_double(const RatMat& m);

struct SingularReport {
  Eigen::VectorXd mu;  // descending logs of singular values
  bool subspaces_defined = false;
  Eigen::VectorXd unstable;       // E^+_1, unit vector (when defined)
  Eigen::VectorXd stable_normal;  // unit normal of E^-_{d-1} (when defined)
  bool bottom_defined = false;    // mu_{d-1,d} above the threshold
  Eigen::VectorXd expanding_hyperplane_normal;  // normal of U_{d-1}

  double gap(int i) const { return mu(i - 1) - mu(i); }  // mu_{i,i+1}, 1-based
  double gap12() const { return mu(0) - mu(1); }
  double mu_1d() const { return mu(0) - mu(mu.size() - 1); }
};

// Throws racg::DomainError on numerically singular input.
SingularReport singular_report(const Eigen::MatrixXd& g);
SingularReport singular_report(const RatMat& g);  // exact, scaled once

Eigen::VectorXd mu_vector(const RatMat& g);  // absolute mu, scale-corrected

struct AdditivityReport {
  double deviation;  // || mu(h1 g h2) - mu(g) ||
  double bound;      // ||mu(h1)|| + ||mu(h2)||  (K = 1, Euclidean norm)
  bool violated;
};
AdditivityReport check_additivity(const RatMat& g, const RatMat& h1,
                                  const RatMat& h2, double tol = 1e-8);

struct TransversalityReport {
  double theta;  // angle(E^-_{d-1}(g), E^+_1(h))
  double lhs;    // mu_12(gh)
  double rhs;    // mu_12(g) + mu_12(h) + 2 log sin(theta)
  bool vacuous;  // sin(theta) = 0
  bool violated;
};
// Pre: both gaps above the threshold (throws otherwise).
TransversalityReport check_transversality(const RatMat& g, const RatMat& h,
                                          double tol = 1e-8);

// Per-prefix (and optionally pairwise) gap data along a geodesic word.
struct GapTrace {
  racg::Word word;
  std::vector<Eigen::VectorXd> mu;        // length L+1, absolute
  std::vector<Eigen::VectorXd> unstable;  // empty vector when undefined
  std::vector<Eigen::VectorXd> stable_normal;
  // normal of the span of the d-1 longest axes: the hyperplane of the
  // limit flag, converging when the bottom gap grows (E^-_{d-1} of the
  // prefixes itself oscillates along a right ray)
  std::vector<Eigen::VectorXd> limit_hyperplane_normal;
  Eigen::MatrixXd pair_gap12;  // (L+1)^2, empty unless requested
  Eigen::MatrixXd pair_mu1d;

  int length() const { return static_cast<int>(word.size()); }
  double gap12(int n) const { return mu[n](0) - mu[n](1); }
};

// Pre: the word is geodesic (normalized); throws otherwise.
GapTrace gap_trace(const vinberg::SimplicialRep& rep, const racg::Word& word,
                   bool with_pairwise = false);

// Samples (n, mu(g^n)) for the powers of a fixed element; the power count
// is the length scale of the samples.
struct PowerScan {
  racg::Word word;
  std::vector<Eigen::VectorXd> mu;  // index n = 0..n_max
  double gap12(int n) const { return mu[n](0) - mu[n](1); }
};
PowerScan power_scan(const vinberg::SimplicialRep& rep, const racg::Word& word,
                     int n_max);

struct GapSample {
  double len;
  double gap;
};

struct GapFit {
  double a = 0;  // largest feasible slope given the offset cap
  double b = 0;  // smallest feasible offset at that slope
  double worst_slack = 0;  // min over samples of gap - (A len - B)
  int samples = 0;
};

// Largest A with gap >= A len - B over all samples for some B <= b_cap;
// closed form: A = min over samples with len > 0 of (gap + b_cap)/len.
GapFit fit_gaps(const std::vector<GapSample>& samples, double b_cap);
std::vector<GapSample> trace_samples(const std::vector<GapTrace>& traces);
std::vector<GapSample> scan_samples(const PowerScan& scan);

struct RegularityReport {
  bool ok = false;
  int pairs = 0;
  int violations = 0;
  double worst_slack = 0;  // min of gap12 - (A mu_1d - B)
};
// Checks mu_12 >= A mu_1d - B over all pairwise samples of the traces
// (requires pairwise data).
RegularityReport uniform_regularity_check(const std::vector<GapTrace>& traces,
                                          double a, double b);

struct ConvergenceReport {
  std::vector<double> unstable_step;  // d_P(E^+_1(n), E^+_1(n+1))
  std::vector<double> stable_step;    // dual metric on hyperplanes
  double unstable_rate = 0;           // fitted log-linear decay rate
  double stable_rate = 0;
  double final_unstable_step = 0;
  double final_stable_step = 0;
  bool certified = false;  // decay observed and final steps below threshold
};
ConvergenceReport convergence_check(const GapTrace& trace,
                                    double final_tol = 1e-6);

struct HilbertGapReport {
  bool precondition_ok = false;  // g closure(O1) strictly inside O2
  double diam = 0;               // diam_{O2}(g O1) over generator points
  double mu12 = 0;
  double bound_rhs = 0;    // -log diam
  double empirical_d = 0;  // max(0, bound_rhs - mu12)
};
// Pre verified exactly: every g-image of an O1 generator has positive
// radial margin in O2.
HilbertGapReport hilbert_gap_bound_check(const std::vector<RatVec>& omega1,
                                         const std::vector<RatVec>& omega2,
                                         const RatMat& g);

struct SubspaceLocalityReport {
  bool defined = false;  // gap above threshold
  double gap12 = 0;
  double dist_to_halfcone = 0;     // d_P(E^+_1, depth-N Hc_+(W_k) approx)
  bool within_eps = false;
  // standard-subgroup data (when the support is proper)
  bool proper_support = false;
  double dist_to_vt = 0;
  double dist_to_vt_perp = 0;
  double transversality_angle = 0;  // min principal angle of V_T vs V_T^perp
};
SubspaceLocalityReport halfcone_subspace_check(
    const vinberg::SimplicialRep& rep, const racg::Word& word, int k,
    double eps, int depth);

// Angle distance from a projective point to the conic hull of the columns
// of `cone` (nonnegative least squares projection).
double point_to_cone_angle(const Eigen::VectorXd& u, const Eigen::MatrixXd& cone);

}  // namespace anosov
