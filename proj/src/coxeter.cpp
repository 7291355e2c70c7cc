#include "racg/coxeter.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace racg {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

CoxeterSystem::CoxeterSystem(std::vector<std::string> names,
                             std::vector<std::pair<int, int>> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  const int n = rank();
  if (n == 0) throw DomainError("empty generator list");
  if (n > kMaxRank) throw DomainError("rank exceeds supported maximum");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw DomainError("empty generator name");
    if (!seen.insert(name).second)
      throw DomainError("duplicate generator: " + name);
  }
  adj_.assign(n, 0);
  for (auto& [i, j] : edges_) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw DomainError("edge references unknown generator");
    if (i == j) throw DomainError("self-loop on generator " + names_[i]);
    adj_[i] |= GenSet(1) << j;
    adj_[j] |= GenSet(1) << i;
    if (i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& name : names_) h = fnv1a(name + ";", h);
  for (const auto& [i, j] : edges_)
    h = fnv1a(std::to_string(i) + "-" + std::to_string(j), h);
  fingerprint_ = h;
}

int CoxeterSystem::index_of(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

CoxeterSystem parse_nerve(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("nerve file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw DomainError("nerve file must contain a \"generators\" array");
  std::vector<std::string> names;
  for (const auto& g : j["generators"]) {
    if (!g.is_string()) throw DomainError("generator names must be strings");
    names.push_back(g.get<std::string>());
  }
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw DomainError("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw DomainError("each edge must be a pair of generator names");
      auto find = [&](const std::string& s) {
        for (int i = 0; i < (int)names.size(); ++i)
          if (names[i] == s) return i;
        throw DomainError("unknown generator in edge: " + s);
      };
      edges.emplace_back(find(e[0].get<std::string>()),
                         find(e[1].get<std::string>()));
    }
  }
  return CoxeterSystem(std::move(names), std::move(edges));
}

std::string nerve_to_json(const CoxeterSystem& sys) {
  nlohmann::ordered_json j;
  j["generators"] = sys.names();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [i, k] : sys.edges())
    edges.push_back({sys.name(i), sys.name(k)});
  j["edges"] = edges;
  return j.dump();
}

std::size_t NormalForm::hash() const {
  std::size_t h = 14695981039346656037ULL;
  for (int x : letters_) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

void check_letters(const CoxeterSystem& sys, const Word& w) {
  for (int s : w)
    if (s < 0 || s >= sys.rank())
      throw DomainError("word contains invalid generator index");
}

// Appends one letter to a geodesic word, cancelling when possible.  The
// result is again geodesic: ws is non-geodesic iff some occurrence of s can
// be shuffled to the end, in which case the two cancel.
void append_letter(const CoxeterSystem& sys, Word& w, int s) {
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (w[i] == s) {
      w.erase(w.begin() + i);
      return;
    }
    if (!sys.commutes(w[i], s)) break;
  }
  w.push_back(s);
}

// Lexicographically least linear extension of the heap of a geodesic word:
// repeatedly emit the smallest generator with an unblocked occurrence.
Word heap_least(const CoxeterSystem& sys, Word w) {
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    int best = -1;
    std::size_t best_pos = 0;
    GenSet blocked = 0;  // generators with an occurrence already passed
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int s = w[i];
      const bool minimal =
          ((blocked >> s) & 1u) == 0 &&
          (blocked & ~sys.neighbors(s)) == 0;
      if (minimal && (best == -1 || s < best)) {
        best = s;
        best_pos = i;
      }
      blocked |= GenSet(1) << s;
    }
    out.push_back(best);
    w.erase(w.begin() + best_pos);
  }
  return out;
}

}  // namespace

NormalForm normalize(const CoxeterSystem& sys, const Word& w) {
  check_letters(sys, w);
  Word g;
  g.reserve(w.size());
  for (int s : w) append_letter(sys, g, s);
  return NormalForm(heap_least(sys, std::move(g)), sys.fingerprint());
}

NormalForm multiply(const CoxeterSystem& sys, const NormalForm& x,
                    const NormalForm& y) {
  if (x.system_fingerprint() != 0 && y.system_fingerprint() != 0 &&
      x.system_fingerprint() != y.system_fingerprint())
    throw DomainError("multiply: operands from different systems");
  Word g = x.letters();
  for (int s : y.letters()) append_letter(sys, g, s);
  return NormalForm(heap_least(sys, std::move(g)), sys.fingerprint());
}

NormalForm invert(const CoxeterSystem& sys, const NormalForm& x) {
  Word rev(x.letters().rbegin(), x.letters().rend());
  return NormalForm(heap_least(sys, std::move(rev)), sys.fingerprint());
}

GenSet support(const NormalForm& x) {
  GenSet s = 0;
  for (int g : x.letters()) s |= GenSet(1) << g;
  return s;
}

bool in_standard_subgroup(const NormalForm& x, GenSet t) {
  return (support(x) & ~t) == 0;
}

bool is_irreducible(const CoxeterSystem& sys) {
  const int n = sys.rank();
  if (n == 1) return true;
  // BFS in the complement graph.
  std::vector<char> vis(n, 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (!vis[v] && v != u && !sys.commutes(u, v)) {
        vis[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == n;
}

std::vector<NormalForm> enumerate_ball(const CoxeterSystem& sys, int radius,
                                       int radius_cap) {
  if (radius < 0) throw DomainError("negative radius");
  if (radius > radius_cap)
    throw DomainError("ball radius " + std::to_string(radius) +
                      " exceeds cap " + std::to_string(radius_cap));
  std::vector<NormalForm> ball{normalize(sys, {})};
  std::unordered_set<NormalForm, NormalFormHash> seen(ball.begin(), ball.end());
  std::vector<NormalForm> frontier = ball;
  for (int r = 1; r <= radius; ++r) {
    std::vector<NormalForm> next;
    for (const auto& x : frontier) {
      for (int s = 0; s < sys.rank(); ++s) {
        NormalForm y = multiply(sys, x, normalize(sys, {s}));
        if (y.length() == r && seen.insert(y).second) next.push_back(y);
      }
    }
    std::sort(next.begin(), next.end());
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return ball;
}

std::vector<NormalForm> enumerate_sphere(const CoxeterSystem& sys, int radius,
                                         int radius_cap) {
  auto ball = enumerate_ball(sys, radius, radius_cap);
  std::vector<NormalForm> sphere;
  for (auto& x : ball)
    if (x.length() == radius) sphere.push_back(std::move(x));
  return sphere;
}

Word parse_word(const CoxeterSystem& sys, const std::string& text) {
  Word w;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    int idx = sys.index_of(token);
    if (idx < 0) throw DomainError("unknown generator in word: " + token);
    w.push_back(idx);
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return w;
}

std::string word_to_string(const CoxeterSystem& sys, const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << sys.name(w[i]);
  }
  return os.str();
}

}  // namespace racg
