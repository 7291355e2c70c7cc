// Cartan matrices for right-angled Coxeter systems: validity, full
// nondegeneracy (all principal minors nonzero), negative type, and seeded
// random generation.

#pragma once

#include <cstdint>
#include <string>

#include "racg/rational.hpp"

namespace vinberg {

struct CartanValidation {
  bool valid = false;
  std::string reason;  // empty when valid
};

// A_ii = 2; A_ij = 0 iff i != j commute; otherwise A_ij < 0, A_ij A_ji >= 4.
CartanValidation validate_cartan(const racg::CoxeterSystem& sys,
                                 const RatMat& a);

// The geometric (Tits) Cartan matrix: -2 at non-commuting pairs.
RatMat geometric_cartan(const racg::CoxeterSystem& sys);

// Exact evaluation of all 2^n - 1 principal minors.  Throws above the cap.
bool is_fully_nondegenerate(const RatMat& a, int cap = 16);

// True iff A has a negative eigenvalue.  A is conjugate to a symmetric
// matrix on irreducible sign-symmetric support, so its spectrum is real and
// Descartes' rule on the exact characteristic polynomial is exact.
// Pre: irreducible system, det(A) != 0.
bool is_negative_type(const racg::CoxeterSystem& sys, const RatMat& a);

// Exact characteristic polynomial coefficients of det(x I - A),
// c[0] + c[1] x + ... + c[n] x^n (Faddeev-LeVerrier).
std::vector<Rat> characteristic_polynomial(const RatMat& a);

struct RandomCartanOptions {
  int range = 6;           // numerators sampled from (2, range]
  bool symmetric = false;
  bool integer = false;
  int max_attempts = 200;
};

// Rejection-samples Cartan matrices with A_ij*A_ji > 4 at non-edges until
// fully nondegenerate.  Deterministic per seed.
RatMat random_fully_nondegenerate(const racg::CoxeterSystem& sys,
                                  std::uint64_t seed,
                                  const RandomCartanOptions& opt = {});

// Cartan file schema: JSON array of arrays of rational strings.
RatMat parse_cartan_json(const racg::CoxeterSystem& sys,
                         const std::string& json_text);
std::string cartan_to_json(const RatMat& a);

}  // namespace vinberg
