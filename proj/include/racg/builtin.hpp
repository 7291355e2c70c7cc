// Built-in nerves so the packaged demos run with zero files:
// fig-a1, fig-a2, pentagon, dihedral, free3.

#pragma once

#include "racg/coxeter.hpp"

namespace racg {

inline CoxeterSystem builtin_nerve(const std::string& name) {
  if (name == "fig-a1") {
    // square a-b-c-d plus an isolated vertex e
    return CoxeterSystem({"a", "b", "c", "d", "e"},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  }
  if (name == "fig-a2") {
    // t1,t2,t3 all joined to d1,d2; e joined to t1,t3
    return CoxeterSystem({"t1", "t2", "t3", "d1", "d2", "e"},
                         {{0, 3}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4},
                          {0, 5}, {2, 5}});
  }
  if (name == "pentagon") {
    return CoxeterSystem({"a", "b", "c", "d", "e"},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  }
  if (name == "dihedral") {
    return CoxeterSystem({"s", "t"}, {});
  }
  if (name == "free3") {
    return CoxeterSystem({"a", "b", "c"}, {});
  }
  throw DomainError("unknown built-in nerve: " + name);
}

inline bool is_builtin_nerve(const std::string& name) {
  return name == "fig-a1" || name == "fig-a2" || name == "pentagon" ||
         name == "dihedral" || name == "free3";
}

}  // namespace racg
