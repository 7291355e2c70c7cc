// Right-angled Coxeter systems: nerves, geodesic normal forms, standard
// subgroups, ball enumeration.
//
// A system is a simplicial graph on the generator set; two generators
// commute iff they are adjacent.  Elements are represented by their
// canonical geodesic word: the lexicographically least linear extension of
// the heap of any geodesic representative, using the declared generator
// order.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace racg {

// Domain-level failure (invalid nerve, cap exceeded, mixed systems, ...).
// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kMaxRank = 64;

using Word = std::vector<int>;
using GenSet = std::uint64_t;  // subset of generators as a bitmask

class CoxeterSystem {
 public:
  CoxeterSystem() = default;
  CoxeterSystem(std::vector<std::string> names,
                std::vector<std::pair<int, int>> edges);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool commutes(int i, int j) const {
    return i != j && (adj_[i] >> j) & 1u;
  }
  GenSet neighbors(int i) const { return adj_[i]; }

  int index_of(const std::string& name) const;  // -1 if unknown
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<GenSet> adj_;
  std::uint64_t fingerprint_ = 0;
};

// Nerve file schema: {"generators":[...],"edges":[["a","b"],...]}.
CoxeterSystem parse_nerve(const std::string& json_text);
std::string nerve_to_json(const CoxeterSystem& sys);

// Canonical geodesic representative of a group element.
class NormalForm {
 public:
  NormalForm() = default;

  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const Word& letters() const { return letters_; }
  std::uint64_t system_fingerprint() const { return sys_fp_; }

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const NormalForm& a, const NormalForm& b) {
    return !(a == b);
  }
  // Length-lexicographic order; used for deterministic enumeration output.
  friend bool operator<(const NormalForm& a, const NormalForm& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.letters_ < b.letters_;
  }

  std::size_t hash() const;

 private:
  friend NormalForm normalize(const CoxeterSystem&, const Word&);
  friend NormalForm multiply(const CoxeterSystem&, const NormalForm&,
                             const NormalForm&);
  friend NormalForm invert(const CoxeterSystem&, const NormalForm&);
  NormalForm(Word letters, std::uint64_t fp)
      : letters_(std::move(letters)), sys_fp_(fp) {}

  Word letters_;
  std::uint64_t sys_fp_ = 0;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& nf) const { return nf.hash(); }
};

// Canonical geodesic representative; two words normalize equal iff they
// represent the same group element.
NormalForm normalize(const CoxeterSystem& sys, const Word& w);

NormalForm multiply(const CoxeterSystem& sys, const NormalForm& x,
                    const NormalForm& y);
NormalForm invert(const CoxeterSystem& sys, const NormalForm& x);

// Generators occurring in any (equivalently every) geodesic representative.
GenSet support(const NormalForm& x);
bool in_standard_subgroup(const NormalForm& x, GenSet t);

// True iff the complement graph of the nerve is connected.
bool is_irreducible(const CoxeterSystem& sys);

// All elements of word length <= radius, sorted, each exactly once.
// Throws DomainError when radius exceeds the cap.
std::vector<NormalForm> enumerate_ball(const CoxeterSystem& sys, int radius,
                                       int radius_cap = 12);

// Sphere of word length exactly r (computed via the ball).
std::vector<NormalForm> enumerate_sphere(const CoxeterSystem& sys, int radius,
                                         int radius_cap = 12);

// Parsing helpers for the CLI word syntax (whitespace- or comma-separated
// generator names).
Word parse_word(const CoxeterSystem& sys, const std::string& text);
std::string word_to_string(const CoxeterSystem& sys, const Word& w);
inline std::string to_string(const CoxeterSystem& sys, const NormalForm& nf) {
  return word_to_string(sys, nf.letters());
}

}  // namespace racg
