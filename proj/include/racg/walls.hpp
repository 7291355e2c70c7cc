// Walls of the Davis complex, handled group-theoretically: a wall is the
// (canonical normal form of the) reflection fixing it.  Includes the
// dependence partial order on the walls separating two chambers, efficient
// itineraries and gamma(W1,W2), bounded-product-projection constants, and
// the disjoint-wall decomposition of an itinerary.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "racg/coxeter.hpp"

namespace racg {

struct Wall {
  NormalForm reflection;  // u s u^-1 in normal form; complete invariant
  NormalForm prefix;      // canonical shortest u realizing the reflection
  int type = -1;          // the unique generator conjugate to the reflection

  friend bool operator==(const Wall& a, const Wall& b) {
    return a.reflection == b.reflection;
  }
  friend bool operator!=(const Wall& a, const Wall& b) { return !(a == b); }
  friend bool operator<(const Wall& a, const Wall& b) {
    return a.reflection < b.reflection;
  }
};

struct WallHash {
  std::size_t operator()(const Wall& w) const { return w.reflection.hash(); }
};

// Wall with the given prefix and type, canonicalized.
Wall make_wall(const CoxeterSystem& sys, const NormalForm& prefix, int type);
Wall wall_of_reflection(const CoxeterSystem& sys, const NormalForm& reflection);

// Dependence partial order on the walls of a geodesic word, indexed by
// letter positions: i < j iff a chain of positions with consecutive
// non-commuting types joins them.
class WallPoset {
 public:
  WallPoset() = default;
  WallPoset(const CoxeterSystem& sys, const Word& types);

  int size() const { return static_cast<int>(types_.size()); }
  int type(int i) const { return types_[i]; }
  const Word& types() const { return types_; }

  bool less(int i, int j) const { return (below_[j] >> i) & 1u; }
  bool comparable(int i, int j) const {
    return i != j && (less(i, j) || less(j, i));
  }
  bool incomparable(int i, int j) const { return i != j && !comparable(i, j); }
  std::uint64_t below_mask(int j) const { return below_[j]; }
  // Positions (strictly) incomparable with i.
  std::uint64_t incomparable_mask(int i) const { return incomp_[i]; }

 private:
  Word types_;
  std::vector<std::uint64_t> below_;
  std::vector<std::uint64_t> incomp_;
};

struct Itinerary {
  std::vector<Wall> walls;
  NormalForm departure;  // chamber the itinerary departs from

  // The geodesic word traversed is the sequence of wall types.
  Word traversed_word() const {
    Word w;
    w.reserve(walls.size());
    for (const auto& wall : walls) w.push_back(wall.type);
    return w;
  }
};

// Walls W_k = s_1...s_{k-1} W(s_k) of the itinerary departing from the
// identity along the normal form of gamma, plus the dependence order.
std::pair<std::vector<Wall>, WallPoset> walls_of(const CoxeterSystem& sys,
                                                 const NormalForm& gamma);

// All linear extensions of the poset as geodesic words.  Throws when the
// count exceeds `limit`.
std::vector<Word> linear_extensions(const WallPoset& poset, std::size_t limit);
std::size_t count_linear_extensions(const WallPoset& poset, std::size_t limit);

// True iff the two reflections commute in the group (tested via normal
// forms).  Throws on identical walls.
bool walls_cross(const CoxeterSystem& sys, const Wall& w1, const Wall& w2);

// Efficient itinerary from W1 to W2: first wall W1, last wall W2, interior
// walls exactly those separating W1 from W2 (disjoint from both).
Itinerary efficient_itinerary(const CoxeterSystem& sys, const Wall& w1,
                              const Wall& w2);
NormalForm gamma_of(const CoxeterSystem& sys, const Wall& w1, const Wall& w2);

// True iff w separates the identity chamber from the wall w2 (i.e. from
// both chambers adjacent to w2).
bool separates_identity_from(const CoxeterSystem& sys, const Wall& w,
                             const Wall& w2);

// Minimal D such that gamma has D-bounded product projections: the maximum
// over pairs (A,B) of disjoint completely incomparable subsets of
// min(|A|,|B|).  nullopt means the search exceeded `cap` (OVER_CAP).
std::optional<int> bpp_constant(const WallPoset& poset, int cap = 64);
std::optional<int> bpp_constant(const CoxeterSystem& sys,
                                const NormalForm& gamma, int cap = 64);

// A minimal wall crossing at most (2D+1)*4^D walls of the poset, found by
// the constructive argument (intersection types against the minimal walls).
// `active` restricts to a sub-poset given as a bitmask; returns a position.
int minimal_wall_low_crossings(const WallPoset& poset, int D,
                               std::uint64_t active);
int minimal_wall_low_crossings(const CoxeterSystem& sys,
                               const NormalForm& gamma, int D);

struct DisjointDecomposition {
  std::vector<Wall> chain;            // W_1 < ... < W_n, pairwise disjoint
  std::vector<int> chain_positions;   // positions in the source poset
  std::vector<Itinerary> spacers;     // V_i, walls crossing W_i
  std::vector<std::vector<int>> spacer_positions;
  long long bound_R = 0;              // (2D+1)*4^D*D + D
  NormalForm gamma;                   // the decomposed element
};

// Iterative peeling of minimal low-crossing walls.  Pre: gamma has
// D-bounded product projections.  The four post-conditions are re-checked
// before returning.
DisjointDecomposition disjoint_decomposition(const CoxeterSystem& sys,
                                             const NormalForm& gamma, int D);

// gamma_U(W_i, W_j) = eta_i * gamma(W_i, W_j) * eta_j with |eta| < R, for
// chain walls i < j of a decomposition.
struct ChainFactorization {
  NormalForm eta_i, middle, eta_j;  // middle = gamma(W_i, W_j)
};
ChainFactorization decomposition_factor(const CoxeterSystem& sys,
                                        const DisjointDecomposition& dec,
                                        int i, int j);

}  // namespace racg
