// Exact rational linear programming (dense two-phase simplex, Bland's
// rule).  Small problems only; used for conic membership, hull margins,
// chord intersections and supporting-functional certificates.

#pragma once

#include <optional>
#include <vector>

#include "racg/rational.hpp"

namespace linprog {

using vinberg::Rat;
using vinberg::RatMat;
using vinberg::RatRow;
using vinberg::RatVec;

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Rat value;
  RatVec x;
};

// maximize c.x subject to A x = b, x >= 0.
Result maximize(const RatMat& a, const RatVec& b, const RatVec& c);

// Does there exist x >= 0 with A x = b?
bool feasible(const RatMat& a, const RatVec& b);

// Is p in the conic hull of the given points (exactly)?
bool in_conic_hull(const std::vector<RatVec>& points, const RatVec& p);

// A functional c with c(p) >= 1 for every given point, if one exists.
// Existence is equivalent to the points spanning a pointed cone.
std::optional<RatRow> positive_functional(const std::vector<RatVec>& points);

}  // namespace linprog
