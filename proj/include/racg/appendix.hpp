// Mechanical certification of the two strong-nesting counterexamples: the
// square-plus-vertex nerve with the words (bd)^k e (ac)^k, and the
// triangle-times-dihedral-plus-vertex nerve with (t1 t3 t2)^k e (d1 d2)^k.
// Each certificate verifies, exactly: full support of gamma(W, W'),
// half-space nesting, the fixed-subspace witness incidences of the failure
// configuration, and margin decay in the nesting probe.

#pragma once

#include <string>
#include <vector>

#include "racg/geometry.hpp"

namespace projgeom {

struct IncidenceCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CertReport {
  std::string which;  // "a1" or "a2"
  int k = 1;
  bool certified = false;
  std::vector<IncidenceCheck> checks;
  NestingProbeReport probe;
  racg::Wall wall_first, wall_last;
  racg::NormalForm gamma;
};

// Case A1: nerve fig-a1, any nonsingular Cartan matrix, word (bd)^k e (ac)^k.
CertReport appendix_certify_a1(const vinberg::RatMat& cartan, int k,
                               int depth = 6);

// Case A2: nerve fig-a2, fully nondegenerate Cartan matrix, word
// (t1 t3 t2)^k e (d1 d2)^k.
CertReport appendix_certify_a2(const vinberg::RatMat& cartan, int k,
                               int depth = 5);

}  // namespace projgeom
