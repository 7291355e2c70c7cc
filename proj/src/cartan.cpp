#include "racg/cartan.hpp"

#include <random>
#include <sstream>

#include "json.hpp"

namespace vinberg {

using racg::DomainError;

Rat parse_rational(const std::string& text, const std::string& field) {
  std::string t;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw DomainError("malformed rational in " + field);
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(t);
    boost::multiprecision::mpz_int num(t.substr(0, slash));
    boost::multiprecision::mpz_int den(t.substr(slash + 1));
    if (den == 0)
      throw DomainError("malformed rational (zero denominator) in " + field);
    return Rat(num) / Rat(den);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("malformed rational \"" + text + "\" in " + field);
  }
}

std::string rational_to_string(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

RatMat rat_identity(int n) {
  RatMat m = RatMat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw DomainError("det: non-square matrix");
  RatMat a = m;
  const int n = static_cast<int>(a.rows());
  Rat result = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      result = -result;
    }
    result *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rat f = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return result;
}

namespace {

// Row-reduced echelon data: returns pivot columns; a is reduced in place.
std::vector<int> rref(RatMat& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    a.row(p).swap(a.row(r));
    Rat inv = Rat(1) / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMat kernel_basis(const RatMat& m) {
  RatMat a = m;
  auto pivots = rref(a);
  const int cols = static_cast<int>(m.cols());
  std::vector<int> free_cols;
  {
    std::size_t pi = 0;
    for (int c = 0; c < cols; ++c) {
      if (pi < pivots.size() && pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  RatMat basis = RatMat::Zero(cols, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      basis(pivots[pi], static_cast<int>(k)) = -a(static_cast<int>(pi), fc);
  }
  return basis;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse: non-square matrix");
  const int n = static_cast<int>(m.rows());
  RatMat aug(n, 2 * n);
  aug << m, rat_identity(n);
  auto pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() >= n)
    throw DomainError("inverse: singular matrix");
  return aug.rightCols(n);
}

RatVec solve(const RatMat& m, const RatVec& b) {
  return inverse(m) * b;
}

RatVec normalize_ray(const RatVec& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) != 0) {
      RatVec out = v;
      Rat s = abs(v(i));
      for (int j = 0; j < v.size(); ++j) out(j) /= s;
      return out;
    }
  }
  return v;  // zero vector
}

std::string vec_key(const RatVec& v) {
  std::ostringstream os;
  for (int i = 0; i < v.size(); ++i) os << v(i) << '|';
  return os.str();
}

double to_double(const Rat& x) { return x.convert_to<double>(); }

Eigen::MatrixXd to_double(const RatMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

Eigen::VectorXd to_double_vec(const RatVec& v) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

CartanValidation validate_cartan(const racg::CoxeterSystem& sys,
                                 const RatMat& a) {
  const int n = sys.rank();
  if (a.rows() != n || a.cols() != n)
    throw DomainError("cartan matrix dimension does not match the system");
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 2)
      return {false, "diagonal entry A[" + sys.name(i) + "][" + sys.name(i) +
                         "] is not 2"};
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (sys.commutes(i, j)) {
        if (a(i, j) != 0)
          return {false, "commuting pair (" + sys.name(i) + "," + sys.name(j) +
                             ") requires a zero entry"};
      } else {
        if (!(a(i, j) < 0))
          return {false, "non-commuting pair (" + sys.name(i) + "," +
                             sys.name(j) + ") requires a negative entry"};
        if (a(i, j) * a(j, i) < 4)
          return {false, "product A[" + sys.name(i) + "][" + sys.name(j) +
                             "]*A[" + sys.name(j) + "][" + sys.name(i) +
                             "] is below 4"};
      }
    }
  }
  return {true, ""};
}

RatMat geometric_cartan(const racg::CoxeterSystem& sys) {
  const int n = sys.rank();
  RatMat a = RatMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2;
    for (int j = 0; j < n; ++j)
      if (i != j && !sys.commutes(i, j)) a(i, j) = -2;
  }
  return a;
}

bool is_fully_nondegenerate(const RatMat& a, int cap) {
  const int n = static_cast<int>(a.rows());
  if (n > cap)
    throw DomainError("principal minor sweep capped at n = " +
                      std::to_string(cap));
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) idx.push_back(i);
    RatMat sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        sub(static_cast<int>(r), static_cast<int>(c)) = a(idx[r], idx[c]);
    if (det(sub) == 0) return false;
  }
  return true;
}

std::vector<Rat> characteristic_polynomial(const RatMat& a) {
  const int n = static_cast<int>(a.rows());
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(A),
  // M_k = A(M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k.
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMat mk = a;
  for (int k = 1; k <= n; ++k) {
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / k;
    if (k < n) {
      RatMat mi = mk;
      for (int i = 0; i < n; ++i) mi(i, i) += c[n - k];
      mk = a * mi;
    }
  }
  return c;
}

bool is_negative_type(const racg::CoxeterSystem& sys, const RatMat& a) {
  if (!is_irreducible(sys))
    throw DomainError("is_negative_type: system is reducible");
  if (det(a) == 0) throw DomainError("is_negative_type: singular matrix");
  auto c = characteristic_polynomial(a);
  // Negative roots of p(x) = positive roots of p(-x); Descartes is exact
  // because the spectrum is real (A is conjugate to a symmetric matrix).
  int sign_changes = 0;
  int prev = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Rat coeff = (k % 2 == 0) ? c[k] : -c[k];
    if (coeff == 0) continue;
    int s = coeff > 0 ? 1 : -1;
    if (prev != 0 && s != prev) ++sign_changes;
    prev = s;
  }
  return sign_changes >= 1;
}

RatMat random_fully_nondegenerate(const racg::CoxeterSystem& sys,
                                  std::uint64_t seed,
                                  const RandomCartanOptions& opt) {
  const int n = sys.rank();
  std::mt19937_64 rng(seed);
  // mt19937_64 output is pinned by the standard; draw by modulo so the
  // sample stream is identical on every platform.
  auto draw_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto draw_entry = [&]() -> Rat {
    // strictly below -2 so products exceed 4
    if (opt.integer) return Rat(-draw_int(3, std::max(3, opt.range)));
    return Rat(-draw_int(9, std::max(9, opt.range * 4))) / 4;
  };
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    RatMat a = RatMat::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    for (int i = 0; i < n; ++i)
      for (int j = (opt.symmetric ? i + 1 : 0); j < n; ++j) {
        if (i == j || sys.commutes(i, j)) continue;
        a(i, j) = draw_entry();
        if (opt.symmetric) a(j, i) = a(i, j);
      }
    auto v = validate_cartan(sys, a);
    if (!v.valid) continue;
    bool strict = true;
    for (int i = 0; i < n && strict; ++i)
      for (int j = i + 1; j < n && strict; ++j)
        if (!sys.commutes(i, j) && a(i, j) * a(j, i) <= 4) strict = false;
    if (!strict) continue;
    if (n <= 16 && !is_fully_nondegenerate(a)) continue;
    return a;
  }
  throw DomainError("random_fully_nondegenerate: attempts exhausted");
}

RatMat parse_cartan_json(const racg::CoxeterSystem& sys,
                         const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("cartan file is not valid JSON: ") +
                      e.what());
  }
  if (j.is_object() && j.contains("cartan")) j = j["cartan"];
  const int n = sys.rank();
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw DomainError("cartan file must be an n x n array");
  RatMat a(n, n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw DomainError("cartan row " + std::to_string(i) + " has wrong size");
    for (int k = 0; k < n; ++k) {
      const auto& cell = j[i][k];
      std::string field =
          "cartan[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (cell.is_string())
        a(i, k) = parse_rational(cell.get<std::string>(), field);
      else if (cell.is_number_integer())
        a(i, k) = Rat(cell.get<long long>());
      else
        throw DomainError(field + " must be a rational string or integer");
    }
  }
  return a;
}

std::string cartan_to_json(const RatMat& a) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(rational_to_string(a(i, j)));
    rows.push_back(row);
  }
  return rows.dump();
}

}  // namespace vinberg
