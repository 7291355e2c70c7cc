#include "racg/representation.hpp"

namespace vinberg {

using racg::DomainError;

namespace {

RatMat reflection_matrix(const RatVec& v, const RatRow& alpha) {
  return rat_identity(static_cast<int>(v.size())) - v * alpha;
}

SimplicialRep assemble(const racg::CoxeterSystem& sys, RatMat cartan, RatMat v,
                       RatMat alpha, bool dual_flag) {
  SimplicialRep rep;
  rep.sys = sys;
  rep.cartan = std::move(cartan);
  rep.v = std::move(v);
  rep.alpha = std::move(alpha);
  rep.dual_of_standard = dual_flag;
  const int n = rep.dim();
  rep.gen.reserve(n);
  for (int i = 0; i < n; ++i)
    rep.gen.push_back(reflection_matrix(rep.v.col(i), rep.alpha.row(i)));
  verify_rep(rep);
  return rep;
}

}  // namespace

void verify_rep(const SimplicialRep& rep) {
  const int n = rep.dim();
  const RatMat id = rat_identity(n);
  if ((rep.alpha * rep.v - rep.cartan).cwiseAbs().sum() != 0)
    throw DomainError("rep: alpha_i(v_j) != A_ij");
  for (int i = 0; i < n; ++i) {
    if ((rep.gen[i] * rep.gen[i] - id).cwiseAbs().sum() != 0)
      throw DomainError("rep: generator is not an involution");
    for (int j = i + 1; j < n; ++j) {
      if (!rep.sys.commutes(i, j)) continue;
      if ((rep.gen[i] * rep.gen[j] - rep.gen[j] * rep.gen[i]).cwiseAbs().sum() != 0)
        throw DomainError("rep: commutation relation fails");
    }
  }
}

SimplicialRep build_rep(const racg::CoxeterSystem& sys, const RatMat& a) {
  auto check = validate_cartan(sys, a);
  if (!check.valid) throw DomainError("invalid cartan matrix: " + check.reason);
  const int n = sys.rank();
  return assemble(sys, a, a /* v_i = column i */, rat_identity(n), false);
}

SimplicialRep geometric_rep(const racg::CoxeterSystem& sys) {
  return build_rep(sys, geometric_cartan(sys));
}

RatMat evaluate_word(const SimplicialRep& rep, const racg::Word& w) {
  RatMat m = rat_identity(rep.dim());
  for (int s : w) {
    if (s < 0 || s >= rep.dim())
      throw DomainError("evaluate: invalid generator index");
    m = m * rep.gen[s];
  }
  return m;
}

RatMat evaluate(const SimplicialRep& rep, const racg::NormalForm& x) {
  return evaluate_word(rep, x.letters());
}

SimplicialRep dual_rep(const SimplicialRep& rep) {
  if (det(rep.cartan) == 0)
    throw DomainError("dual_rep: singular Cartan matrix");
  // Generators transpose; polars and functionals swap roles.
  return assemble(rep.sys, rep.cartan.transpose(), rep.alpha.transpose(),
                  rep.v.transpose(), !rep.dual_of_standard);
}

RatVec interior_point(const SimplicialRep& rep) {
  RatVec ones = RatVec::Constant(rep.dim(), Rat(-1));
  return solve(rep.alpha, ones);
}

RatMat fundamental_rays(const SimplicialRep& rep) {
  return inverse(rep.alpha) * (-rat_identity(rep.dim()));
}

RestrictedRep restrict_rep(const SimplicialRep& rep, racg::GenSet t) {
  const int n = rep.dim();
  RestrictedRep out;
  out.t = t;
  for (int i = 0; i < n; ++i)
    if ((t >> i) & 1u) out.members.push_back(i);
  const int k = static_cast<int>(out.members.size());

  out.basis_t = RatMat(n, k);
  RatMat alpha_t(k, n);
  RatMat a_tt(k, k);
  for (int c = 0; c < k; ++c) {
    out.basis_t.col(c) = rep.v.col(out.members[c]);
    alpha_t.row(c) = rep.alpha.row(out.members[c]);
    for (int r = 0; r < k; ++r)
      a_tt(r, c) = rep.cartan(out.members[r], out.members[c]);
  }
  if (k > 0 && det(a_tt) == 0)
    throw DomainError("restrict: degenerate principal minor for T");
  out.basis_perp = kernel_basis(alpha_t);
  if (static_cast<int>(out.basis_perp.cols()) != n - k)
    throw DomainError("restrict: functionals of T are dependent");

  out.p = RatMat(n, n);
  if (k > 0) out.p.leftCols(k) = out.basis_t;
  if (n - k > 0) out.p.rightCols(n - k) = out.basis_perp;
  out.p_inv = inverse(out.p);  // throws when V_T and V_T^perp not transverse

  // rho_T in the v-basis: reflections with v'_t = e_t, alpha'_t = row of A_TT.
  if (k > 0) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < k; ++c) names.push_back(rep.sys.name(out.members[c]));
    for (int c = 0; c < k; ++c)
      for (int d = c + 1; d < k; ++d)
        if (rep.sys.commutes(out.members[c], out.members[d]))
          edges.emplace_back(c, d);
    racg::CoxeterSystem sub(names, edges);
    out.rep_t = assemble(sub, a_tt, rat_identity(k), a_tt, false);
  }

  // Exact block structure check on the generators of C(T).
  const RatMat id_perp = rat_identity(n - k);
  for (int c = 0; c < k; ++c) {
    RatMat conj = out.p_inv * rep.gen[out.members[c]] * out.p;
    if (k > 0 &&
        (conj.topLeftCorner(k, k) - out.rep_t.gen[c]).cwiseAbs().sum() != 0)
      throw DomainError("restrict: upper block mismatch");
    if (n - k > 0 &&
        (conj.bottomRightCorner(n - k, n - k) - id_perp).cwiseAbs().sum() != 0)
      throw DomainError("restrict: lower block is not the identity");
    if (n - k > 0 && k > 0 &&
        (conj.topRightCorner(k, n - k).cwiseAbs().sum() != 0 ||
         conj.bottomLeftCorner(n - k, k).cwiseAbs().sum() != 0))
      throw DomainError("restrict: off-diagonal blocks are nonzero");
  }
  return out;
}

}  // namespace vinberg
