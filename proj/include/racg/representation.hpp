// Simplicial representations rho(s_i) = id - v_i (x) alpha_i of a
// right-angled Coxeter system, their duals and restrictions to standard
// subgroups.  Everything is exact rational; defining relations are verified
// at build time.

#pragma once

#include <vector>

#include "racg/cartan.hpp"
#include "racg/rational.hpp"
#include "racg/walls.hpp"

namespace vinberg {

struct SimplicialRep {
  racg::CoxeterSystem sys;
  RatMat cartan;               // alpha_i(v_j) = A_ij
  RatMat v;                    // column i is v_i
  RatMat alpha;                // row i is alpha_i
  std::vector<RatMat> gen;     // rho(s_i) = id - v_i alpha_i
  bool dual_of_standard = false;

  int dim() const { return static_cast<int>(cartan.rows()); }
  RatVec polar(int i) const { return v.col(i); }
  RatRow functional(int i) const { return alpha.row(i); }
};

// Standard coordinates: alpha_i = e^i, v_i = column i of A.
SimplicialRep build_rep(const racg::CoxeterSystem& sys, const RatMat& a);
SimplicialRep geometric_rep(const racg::CoxeterSystem& sys);

// Product of generator matrices along the normal form.
RatMat evaluate(const SimplicialRep& rep, const racg::NormalForm& x);
RatMat evaluate_word(const SimplicialRep& rep, const racg::Word& w);

// Dual representation on the dual basis identified with the standard basis:
// evaluate(dual, g) is the inverse transpose of evaluate(rep, g).  Its
// Cartan matrix is the transpose.  Pre: nonsingular Cartan matrix.
SimplicialRep dual_rep(const SimplicialRep& rep);

// A point x with alpha_s(x) = -1 for every s: interior of the fundamental
// cone.  Requires the functional matrix to be invertible.
RatVec interior_point(const SimplicialRep& rep);

// Extreme rays r_j of the fundamental cone (alpha_s(r_j) = -delta_sj).
RatMat fundamental_rays(const SimplicialRep& rep);

struct RestrictedRep {
  racg::GenSet t = 0;
  std::vector<int> members;   // generators of T in declaration order
  RatMat basis_t;             // columns: v_s, s in T
  RatMat basis_perp;          // columns: basis of the kernel of alpha_T
  RatMat p;                   // change of basis [basis_t | basis_perp]
  RatMat p_inv;
  SimplicialRep rep_t;        // simplicial rep of C(T) with Cartan A_TT
};

// C(T)-invariant decomposition V = V_T (+) V_T^perp; conjugation puts
// rho(C(T)) in exact block-diagonal form [rho_T, id].  Pre: fully
// nondegenerate Cartan matrix (a degenerate principal minor throws).
RestrictedRep restrict_rep(const SimplicialRep& rep, racg::GenSet t);

// Exact relation check: involutions, commutation, alpha_i(v_j) = A_ij.
void verify_rep(const SimplicialRep& rep);

}  // namespace vinberg
