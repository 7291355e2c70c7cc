// Test-only brute-force oracles, independent of the library's normal-form
// machinery: rewriting closure under commutation swaps and ss-cancellation.

#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <vector>

#include "racg/coxeter.hpp"

namespace oracle {

using racg::CoxeterSystem;
using racg::Word;

// All words reachable by commutation swaps only.
inline std::set<Word> swap_closure(const CoxeterSystem& sys, const Word& w) {
  std::set<Word> seen{w};
  std::queue<Word> q;
  q.push(w);
  while (!q.empty()) {
    Word cur = q.front();
    q.pop();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!sys.commutes(cur[i], cur[i + 1])) continue;
      Word nxt = cur;
      std::swap(nxt[i], nxt[i + 1]);
      if (seen.insert(nxt).second) q.push(nxt);
    }
  }
  return seen;
}

// Shorten until no member of the swap closure has an adjacent equal pair;
// returns the full set of geodesic representatives.
inline std::set<Word> geodesic_representatives(const CoxeterSystem& sys,
                                               Word w) {
  while (true) {
    auto closure = swap_closure(sys, w);
    bool shortened = false;
    for (const Word& u : closure) {
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i] == u[i + 1]) {
          Word shorter(u.begin(), u.begin() + i);
          shorter.insert(shorter.end(), u.begin() + i + 2, u.end());
          w = shorter;
          shortened = true;
          break;
        }
      }
      if (shortened) break;
    }
    if (!shortened) return closure;
  }
}

// Canonical representative by brute force: lexicographically least geodesic.
inline Word canonical(const CoxeterSystem& sys, const Word& w) {
  auto reps = geodesic_representatives(sys, w);
  return *std::min_element(reps.begin(), reps.end());
}

// Ball of the group by naive closure-based multiplication.
inline std::set<Word> ball(const CoxeterSystem& sys, int radius) {
  std::set<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& x : frontier) {
      for (int s = 0; s < sys.rank(); ++s) {
        Word xs = x;
        xs.push_back(s);
        Word c = canonical(sys, xs);
        if (static_cast<int>(c.size()) == r && out.insert(c).second)
          next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace oracle
