#include "racg/walls.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

namespace racg {

namespace {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word reversed(const Word& a) { return Word(a.rbegin(), a.rend()); }

// u s u^-1 as a raw word.
Word reflection_word(const Word& u, int type) {
  Word w = u;
  w.push_back(type);
  Word rev = reversed(u);
  w.insert(w.end(), rev.begin(), rev.end());
  return w;
}

}  // namespace

Wall wall_of_reflection(const CoxeterSystem& sys, const NormalForm& reflection) {
  if (reflection.length() % 2 == 0)
    throw DomainError("wall_of_reflection: element has even length");
  // Peel: if the first letter of the normal form is a, then a r a is a
  // shorter reflection (a is both an initial and a final letter of the
  // involution r).
  Word u;
  NormalForm r = reflection;
  while (r.length() > 1) {
    const int a = r.letters().front();
    NormalForm shorter = normalize(sys, concat({a}, concat(r.letters(), {a})));
    if (shorter.length() != r.length() - 2)
      throw DomainError("wall_of_reflection: element is not a reflection");
    u.push_back(a);
    r = shorter;
  }
  Wall w;
  w.type = r.letters().front();
  w.prefix = normalize(sys, u);
  w.reflection = reflection;
  if (w.prefix.length() * 2 + 1 != reflection.length())
    throw DomainError("wall_of_reflection: canonical prefix is not geodesic");
  return w;
}

Wall make_wall(const CoxeterSystem& sys, const NormalForm& prefix, int type) {
  if (type < 0 || type >= sys.rank())
    throw DomainError("make_wall: invalid generator type");
  NormalForm refl = normalize(sys, reflection_word(prefix.letters(), type));
  return wall_of_reflection(sys, refl);
}

WallPoset::WallPoset(const CoxeterSystem& sys, const Word& types)
    : types_(types) {
  const int n = size();
  if (n > 64) throw DomainError("wall poset limited to 64 positions");
  below_.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      if (!sys.commutes(types_[i], types_[j])) {
        below_[j] |= (std::uint64_t(1) << i) | below_[i];
      }
    }
  }
  incomp_.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !((below_[j] >> i) & 1u) && !((below_[i] >> j) & 1u))
        incomp_[i] |= std::uint64_t(1) << j;
}

std::pair<std::vector<Wall>, WallPoset> walls_of(const CoxeterSystem& sys,
                                                 const NormalForm& gamma) {
  const Word& w = gamma.letters();
  std::vector<Wall> walls;
  walls.reserve(w.size());
  Word prefix;
  for (std::size_t k = 0; k < w.size(); ++k) {
    walls.push_back(make_wall(sys, normalize(sys, prefix), w[k]));
    prefix.push_back(w[k]);
  }
  // The walls of a geodesic are pairwise distinct.
  std::unordered_set<Wall, WallHash> dedup(walls.begin(), walls.end());
  if (dedup.size() != walls.size())
    throw DomainError("walls_of: repeated wall along a geodesic");
  return {std::move(walls), WallPoset(sys, w)};
}

namespace {

void extend_rec(const WallPoset& p, std::uint64_t done, Word& acc,
                std::vector<Word>* out, std::size_t limit, std::size_t& count) {
  const int n = p.size();
  if ((int)acc.size() == n) {
    ++count;
    if (count > limit) throw DomainError("linear extension limit exceeded");
    if (out) out->push_back(acc);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if ((done >> i) & 1u) continue;
    if ((p.below_mask(i) & ~done) != 0) continue;  // some predecessor pending
    acc.push_back(p.type(i));
    extend_rec(p, done | (std::uint64_t(1) << i), acc, out, limit, count);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Word> linear_extensions(const WallPoset& poset, std::size_t limit) {
  std::vector<Word> out;
  Word acc;
  std::size_t count = 0;
  extend_rec(poset, 0, acc, &out, limit, count);
  return out;
}

std::size_t count_linear_extensions(const WallPoset& poset, std::size_t limit) {
  Word acc;
  std::size_t count = 0;
  extend_rec(poset, 0, acc, nullptr, limit, count);
  return count;
}

bool walls_cross(const CoxeterSystem& sys, const Wall& w1, const Wall& w2) {
  if (w1 == w2) throw DomainError("walls_cross: identical walls");
  NormalForm ab = normalize(sys, concat(w1.reflection.letters(),
                                        w2.reflection.letters()));
  NormalForm ba = normalize(sys, concat(w2.reflection.letters(),
                                        w1.reflection.letters()));
  return ab == ba;
}

namespace {

// Chambers adjacent to a wall: prefix and prefix*type.
std::pair<NormalForm, NormalForm> adjacent_chambers(const CoxeterSystem& sys,
                                                    const Wall& w) {
  NormalForm near = w.prefix;
  NormalForm far = multiply(sys, near, normalize(sys, {w.type}));
  return {near, far};
}

struct TransportedItinerary {
  std::vector<Wall> walls;  // walls of W(x,y) in position order
  WallPoset poset;
  NormalForm x;  // departure chamber
};

TransportedItinerary itinerary_between(const CoxeterSystem& sys,
                                       const NormalForm& x,
                                       const NormalForm& y) {
  NormalForm g = multiply(sys, invert(sys, x), y);
  TransportedItinerary t;
  t.x = x;
  t.poset = WallPoset(sys, g.letters());
  Word prefix;
  for (int s : g.letters()) {
    Word refl = concat(x.letters(), reflection_word(prefix, s));
    refl = concat(refl, reversed(x.letters()));
    t.walls.push_back(wall_of_reflection(sys, normalize(sys, refl)));
    prefix.push_back(s);
  }
  return t;
}

int position_of(const std::vector<Wall>& walls, const Wall& w) {
  for (std::size_t i = 0; i < walls.size(); ++i)
    if (walls[i] == w) return static_cast<int>(i);
  return -1;
}

}  // namespace

bool separates_identity_from(const CoxeterSystem& sys, const Wall& w,
                             const Wall& w2) {
  auto [near, far] = adjacent_chambers(sys, w2);
  auto contains = [&](const NormalForm& chamber) {
    auto t = itinerary_between(sys, normalize(sys, {}), chamber);
    return position_of(t.walls, w) >= 0;
  };
  return contains(near) && contains(far);
}

Itinerary efficient_itinerary(const CoxeterSystem& sys, const Wall& w1,
                              const Wall& w2) {
  if (w1 == w2) throw DomainError("efficient_itinerary: identical walls");
  auto [n1, f1] = adjacent_chambers(sys, w1);
  auto [n2, f2] = adjacent_chambers(sys, w2);

  // Choose chambers x (adjacent to W1) and y (adjacent to W2) so that both
  // walls separate x from y; then W1 is minimal and W2 maximal in W(x,y).
  for (const NormalForm& x : {n1, f1}) {
    for (const NormalForm& y : {n2, f2}) {
      auto t = itinerary_between(sys, x, y);
      int i1 = position_of(t.walls, w1);
      int i2 = position_of(t.walls, w2);
      if (i1 < 0 || i2 < 0) continue;

      const int n = t.poset.size();
      std::vector<int> middle;
      if (t.poset.incomparable(i1, i2)) {
        middle = {i1, i2};  // crossing walls: the itinerary is (W1, W2)
      } else {
        if (!t.poset.less(i1, i2))
          continue;  // wrong side; another chamber pair orients it
        for (int k = 0; k < n; ++k)
          if (k == i1 || k == i2 ||
              (t.poset.less(i1, k) && t.poset.less(k, i2)))
            middle.push_back(k);
      }

      // Prefix part: positions outside the middle with no middle ancestor.
      std::uint64_t midmask = 0;
      for (int k : middle) midmask |= std::uint64_t(1) << k;
      Word prefix_types;
      for (int k = 0; k < n; ++k) {
        if ((midmask >> k) & 1u) continue;
        if ((t.poset.below_mask(k) & midmask) == 0) {
          prefix_types.push_back(t.poset.type(k));
        } else {
          // goes after the middle; no middle element may lie above it
          for (int m : middle)
            if (t.poset.less(k, m))
              throw DomainError("efficient_itinerary: non-convex middle");
        }
      }

      Itinerary it;
      for (int k : middle) it.walls.push_back(t.walls[k]);
      it.departure = multiply(sys, t.x, normalize(sys, prefix_types));
      // The traversed word of an efficient itinerary is geodesic.
      NormalForm g = normalize(sys, it.traversed_word());
      if (g.length() != static_cast<int>(it.walls.size()))
        throw DomainError("efficient_itinerary: traversed word not geodesic");
      return it;
    }
  }
  throw DomainError("efficient_itinerary: no separating chamber pair found");
}

NormalForm gamma_of(const CoxeterSystem& sys, const Wall& w1, const Wall& w2) {
  return normalize(sys, efficient_itinerary(sys, w1, w2).traversed_word());
}

namespace {

struct BppSearch {
  const WallPoset* p;
  int best = 0;
  int cap = 64;
  bool over_cap = false;

  void rec(int start, std::uint64_t a_mask, int a_size, std::uint64_t cand) {
    if (over_cap) return;
    if (a_size > 0) {
      int value = std::min(a_size, std::popcount(cand));
      if (value > best) {
        best = value;
        if (best > cap) {
          over_cap = true;
          return;
        }
      }
    }
    const int n = p->size();
    // Bound: |A| can only grow by the remaining vertices; |B| <= |cand|.
    for (int v = start; v < n; ++v) {
      if ((a_mask >> v) & 1u) continue;
      std::uint64_t cand2 =
          (a_size == 0 ? p->incomparable_mask(v) : cand & p->incomparable_mask(v)) &
          ~(a_mask | (std::uint64_t(1) << v));
      int ub = std::min(a_size + 1 + (n - v - 1), std::popcount(cand2));
      if (ub <= best) continue;
      rec(v + 1, a_mask | (std::uint64_t(1) << v), a_size + 1, cand2);
      if (over_cap) return;
    }
  }
};

}  // namespace

std::optional<int> bpp_constant(const WallPoset& poset, int cap) {
  BppSearch search;
  search.p = &poset;
  search.cap = cap;
  search.rec(0, 0, 0, 0);
  if (search.over_cap) return std::nullopt;
  return search.best;
}

std::optional<int> bpp_constant(const CoxeterSystem& sys,
                                const NormalForm& gamma, int cap) {
  return bpp_constant(WallPoset(sys, gamma.letters()), cap);
}

int minimal_wall_low_crossings(const WallPoset& poset, int D,
                               std::uint64_t active) {
  const int n = poset.size();
  if (active == 0) throw DomainError("minimal wall: empty poset");
  // Minimal walls of the active sub-poset.
  std::uint64_t minimals = 0;
  for (int k = 0; k < n; ++k)
    if (((active >> k) & 1u) && (poset.below_mask(k) & active) == 0)
      minimals |= std::uint64_t(1) << k;
  if (std::popcount(minimals) > 2 * D + 1)
    throw DomainError(
        "minimal wall: more than 2D+1 minimal walls (bounded product "
        "projections violated)");

  // Intersection type of each active wall against the minimal walls, and
  // the over-populated types T.
  std::map<std::uint64_t, int> type_count;
  for (int k = 0; k < n; ++k) {
    if (!((active >> k) & 1u)) continue;
    std::uint64_t im = poset.incomparable_mask(k) & minimals & active;
    type_count[im] += 1;
  }
  std::uint64_t forbidden = 0;
  for (const auto& [mask, cnt] : type_count)
    if (cnt > 2 * D + 1) forbidden |= mask;

  const long long bound = (2LL * D + 1) * (1LL << (2 * D));
  for (int k = 0; k < n; ++k) {
    if (!((minimals >> k) & 1u)) continue;
    if ((forbidden >> k) & 1u) continue;
    long long crossings =
        std::popcount(poset.incomparable_mask(k) & active);
    if (crossings > bound)
      throw DomainError(
          "minimal wall: selected wall exceeds the (2D+1)4^D bound "
          "(this would falsify the lemma)");
    return k;
  }
  throw DomainError(
      "minimal wall: every minimal wall lies in an over-populated "
      "intersection type (this would falsify the lemma)");
}

int minimal_wall_low_crossings(const CoxeterSystem& sys,
                               const NormalForm& gamma, int D) {
  WallPoset poset(sys, gamma.letters());
  std::uint64_t all = poset.size() == 64 ? ~std::uint64_t(0)
                                         : (std::uint64_t(1) << poset.size()) - 1;
  return minimal_wall_low_crossings(poset, D, all);
}

DisjointDecomposition disjoint_decomposition(const CoxeterSystem& sys,
                                             const NormalForm& gamma, int D) {
  auto bpp = bpp_constant(sys, gamma, D);
  if (!bpp || *bpp > D)
    throw DomainError("disjoint_decomposition: element is not in BP(D)");

  auto [walls, poset] = walls_of(sys, gamma);
  const int n = poset.size();
  std::uint64_t remaining =
      n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
  if (n == 0) remaining = 0;

  DisjointDecomposition dec;
  dec.gamma = gamma;
  const long long rprime = (2LL * D + 1) * (1LL << (2 * D));
  dec.bound_R = rprime * D + D;

  std::vector<int> order;  // full reordered itinerary, as positions
  while (remaining != 0) {
    int m = minimal_wall_low_crossings(poset, D, remaining);
    std::uint64_t vi = poset.incomparable_mask(m) & remaining;
    dec.chain.push_back(walls[m]);
    dec.chain_positions.push_back(m);
    order.push_back(m);
    Itinerary spacer;
    std::vector<int> spacer_pos;
    for (int k = 0; k < n; ++k)
      if ((vi >> k) & 1u) {
        spacer.walls.push_back(walls[k]);
        spacer_pos.push_back(k);
        order.push_back(k);
      }
    dec.spacers.push_back(std::move(spacer));
    dec.spacer_positions.push_back(std::move(spacer_pos));
    remaining &= ~(vi | (std::uint64_t(1) << m));
  }

  // The reordering must be a linear extension of the dependence order.
  {
    std::uint64_t done = 0;
    for (int k : order) {
      if ((poset.below_mask(k) & ~done) != 0)
        throw DomainError("disjoint_decomposition: reorder violates <");
      done |= std::uint64_t(1) << k;
    }
  }
  // Departure chambers of the spacers along the reordered itinerary.
  {
    NormalForm chamber = normalize(sys, {});
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dec.chain.size(); ++i) {
      chamber = multiply(sys, chamber,
                         normalize(sys, {poset.type(order[idx++])}));
      dec.spacers[i].departure = chamber;
      for (const auto& w : dec.spacers[i].walls) {
        (void)w;
        chamber = multiply(sys, chamber,
                           normalize(sys, {poset.type(order[idx++])}));
      }
    }
  }

  // Post-conditions (a)-(d) of the decomposition.
  for (std::size_t i = 0; i < dec.chain.size(); ++i) {
    if ((long long)dec.spacers[i].walls.size() > dec.bound_R)
      throw DomainError("disjoint_decomposition: spacer exceeds R");
    for (const auto& v : dec.spacers[i].walls)
      if (!walls_cross(sys, dec.chain[i], v))
        throw DomainError("disjoint_decomposition: spacer wall misses W_i");
  }
  for (std::size_t i = 0; i < dec.chain.size(); ++i)
    for (std::size_t j = i + 1; j < dec.chain.size(); ++j)
      if (walls_cross(sys, dec.chain[i], dec.chain[j]))
        throw DomainError("disjoint_decomposition: chain walls cross");
  for (int m : dec.chain_positions) {
    std::uint64_t all =
        n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    if (std::popcount(poset.incomparable_mask(m) & all) > dec.bound_R)
      throw DomainError("disjoint_decomposition: chain wall crosses > R");
  }
  return dec;
}

ChainFactorization decomposition_factor(const CoxeterSystem& sys,
                                        const DisjointDecomposition& dec,
                                        int i, int j) {
  if (i < 0 || j <= i || j >= (int)dec.chain.size())
    throw DomainError("decomposition_factor: bad chain indices");
  WallPoset poset(sys, dec.gamma.letters());
  const int pi = dec.chain_positions[i];
  const int pj = dec.chain_positions[j];

  // Sub-itinerary from W_i to W_j: chain positions i..j plus spacers i..j-1.
  std::vector<int> sub;
  for (int t = i; t <= j; ++t) {
    sub.push_back(dec.chain_positions[t]);
    if (t < j)
      sub.insert(sub.end(), dec.spacer_positions[t].begin(),
                 dec.spacer_positions[t].end());
  }
  std::sort(sub.begin(), sub.end());

  // Partition: M = {k : pi <= k <= pj}, Y_i = crossing W_i with no
  // M-ancestor, Y_j = the rest (crossing W_j, no M-descendant).
  std::uint64_t midmask = 0;
  std::vector<int> M, Yi, Yj;
  for (int k : sub)
    if (k == pi || k == pj || (poset.less(pi, k) && poset.less(k, pj)))
      midmask |= std::uint64_t(1) << k;
  for (int k : sub) {
    if ((midmask >> k) & 1u) {
      M.push_back(k);
    } else if ((poset.below_mask(k) & midmask) == 0) {
      Yi.push_back(k);
    } else {
      Yj.push_back(k);
      // no middle element may lie above k
      for (int m : M)
        if (poset.less(k, m))
          throw DomainError("decomposition_factor: partition failure");
    }
  }
  auto word_of = [&](const std::vector<int>& ks) {
    Word w;
    for (int k : ks) w.push_back(poset.type(k));
    return normalize(sys, w);
  };
  ChainFactorization f;
  f.eta_i = word_of(Yi);
  f.middle = word_of(M);
  f.eta_j = word_of(Yj);
  if (f.eta_i.length() >= dec.bound_R || f.eta_j.length() >= dec.bound_R)
    throw DomainError("decomposition_factor: eta not shorter than R");
  // gamma_U(W_i,W_j) = eta_i * gamma(W_i,W_j) * eta_j
  NormalForm whole = word_of(sub);
  NormalForm target = multiply(sys, f.eta_i, multiply(sys, f.middle, f.eta_j));
  if (whole != target)
    throw DomainError("decomposition_factor: factorization mismatch");
  NormalForm gij = gamma_of(sys, dec.chain[i], dec.chain[j]);
  if (gij != f.middle)
    throw DomainError("decomposition_factor: middle is not gamma(W_i,W_j)");
  return f;
}

}  // namespace racg
