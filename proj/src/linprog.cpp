#include "racg/linprog.hpp"

namespace linprog {

namespace {

// Dense simplex tableau over the rationals.  Rows: constraints, columns:
// variables; basis[i] is the variable basic in row i.  Bland's rule, so
// termination is guaranteed.
class Tableau {
 public:
  Tableau(const RatMat& a, const RatVec& b) : m_(static_cast<int>(a.rows())) {
    n_ = static_cast<int>(a.cols());
    t_ = RatMat::Zero(m_, n_ + 1);
    t_.leftCols(n_) = a;
    t_.col(n_) = b;
    for (int i = 0; i < m_; ++i)
      if (t_(i, n_) < 0) t_.row(i) = -t_.row(i);
    basis_.assign(m_, -1);
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  const std::vector<int>& basis() const { return basis_; }
  Rat rhs(int i) const { return t_(i, n_); }
  Rat entry(int i, int j) const { return t_(i, j); }

  void append_columns(int extra) {
    RatMat wider = RatMat::Zero(m_, n_ + extra + 1);
    wider.leftCols(n_) = t_.leftCols(n_);
    wider.col(n_ + extra) = t_.col(n_);
    t_ = std::move(wider);
    n_ += extra;
  }

  void set(int i, int j, const Rat& v) { t_(i, j) = v; }
  void set_basis(int i, int var) { basis_[i] = var; }

  void pivot(int row, int col) {
    Rat p = t_(row, col);
    t_.row(row) /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || t_(i, col) == 0) continue;
      t_.row(i) -= t_(i, col) * t_.row(row);
    }
    basis_[row] = col;
  }

  // maximize c.x over the current feasible basis; returns false when
  // unbounded.  `reduced` is c expressed so that basic columns are zeroed.
  bool optimize(const RatVec& c, Rat& value) {
    RatRow red = RatRow::Zero(n_ + 1);
    for (int j = 0; j < n_; ++j) red(j) = c(j);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < 0 || red(basis_[i]) == 0) continue;
      red -= red(basis_[i]) * t_.row(i);
    }
    while (true) {
      int enter = -1;
      for (int j = 0; j < n_; ++j)
        if (red(j) > 0) {
          enter = j;
          break;  // Bland: smallest index
        }
      if (enter < 0) break;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, enter) <= 0) continue;
        Rat ratio = t_(i, n_) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
      red -= red(enter) * t_.row(leave);
    }
    value = -red(n_);
    return true;
  }

  void drop_row(int row) {
    RatMat smaller(m_ - 1, n_ + 1);
    int r = 0;
    for (int i = 0; i < m_; ++i)
      if (i != row) smaller.row(r++) = t_.row(i);
    t_ = std::move(smaller);
    basis_.erase(basis_.begin() + row);
    --m_;
  }

  // Drop all columns >= keep (must all be nonbasic).
  void truncate_columns(int keep) {
    RatMat narrower(m_, keep + 1);
    narrower.leftCols(keep) = t_.leftCols(keep);
    narrower.col(keep) = t_.col(n_);
    t_ = std::move(narrower);
    n_ = keep;
  }

 private:
  int m_;
  int n_;
  RatMat t_;
  std::vector<int> basis_;
};

}  // namespace

Result maximize(const RatMat& a, const RatVec& b, const RatVec& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Tableau t(a, b);

  // Phase 1: artificial basis.
  t.append_columns(m);
  for (int i = 0; i < m; ++i) {
    t.set(i, n + i, Rat(1));
    t.set_basis(i, n + i);
  }
  RatVec phase1 = RatVec::Zero(n + m);
  for (int i = 0; i < m; ++i) phase1(n + i) = Rat(-1);
  Rat value;
  if (!t.optimize(phase1, value)) return {Status::kInfeasible, Rat(0), {}};
  if (value != 0) return {Status::kInfeasible, Rat(0), {}};

  // Drive remaining artificials out of the basis.
  for (int i = t.rows() - 1; i >= 0; --i) {
    if (t.basis()[i] < n) continue;
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (t.entry(i, j) != 0) {
        enter = j;
        break;
      }
    if (enter >= 0)
      t.pivot(i, enter);
    else
      t.drop_row(i);  // redundant constraint
  }

  // All artificials are nonbasic now; drop their columns.
  t.truncate_columns(n);
  if (!t.optimize(c, value)) return {Status::kUnbounded, Rat(0), {}};

  RatVec x = RatVec::Zero(n);
  for (int i = 0; i < t.rows(); ++i)
    if (t.basis()[i] >= 0 && t.basis()[i] < n) x(t.basis()[i]) = t.rhs(i);
  return {Status::kOptimal, value, x};
}

bool feasible(const RatMat& a, const RatVec& b) {
  RatVec c = RatVec::Zero(a.cols());
  return maximize(a, b, c).status == Status::kOptimal;
}

bool in_conic_hull(const std::vector<RatVec>& points, const RatVec& p) {
  if (points.empty()) return p.cwiseAbs().sum() == 0;
  const int d = static_cast<int>(p.size());
  RatMat a(d, points.size());
  for (std::size_t k = 0; k < points.size(); ++k) a.col(k) = points[k];
  return feasible(a, p);
}

std::optional<RatRow> positive_functional(const std::vector<RatVec>& points) {
  if (points.empty()) return RatRow();
  const int d = static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());
  // p_k . (y+ - y-) - s_k = 1, all variables >= 0.
  RatMat a = RatMat::Zero(m, 2 * d + m);
  RatVec b = RatVec::Constant(m, Rat(1));
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < d; ++j) {
      a(k, j) = points[k](j);
      a(k, d + j) = -points[k](j);
    }
    a(k, 2 * d + k) = Rat(-1);
  }
  RatVec c = RatVec::Zero(2 * d + m);
  auto res = maximize(a, b, c);
  if (res.status != Status::kOptimal) return std::nullopt;
  RatRow y = RatRow::Zero(d);
  for (int j = 0; j < d; ++j) y(j) = res.x(j) - res.x(d + j);
  return y;
}

}  // namespace linprog
