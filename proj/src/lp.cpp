#include "mstfan/lp.hpp"

#include <limits>

#include "mstfan/errors.hpp"

namespace mstfan {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Tableau for  maximize c.y  subject to  T y = rhs. The objective row stores
// -c (reduced costs); the last column is the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows + 1, cols + 1), basis_(rows, kNone), free_row_(rows, false) {}

  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return t_.cols() - 1; }
  std::size_t obj() const { return rows(); }
  std::size_t rhs() const { return cols(); }

  Rational& at(std::size_t r, std::size_t c) { return t_(r, c); }
  const Rational& at(std::size_t r, std::size_t c) const { return t_(r, c); }

  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& free_row() { return free_row_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_(r, c);
    for (std::size_t k = 0; k <= cols(); ++k) {
      if (sgn(t_(r, k)) != 0) t_(r, k) *= inv;
    }
    for (std::size_t i = 0; i <= rows(); ++i) {
      if (i == r || sgn(t_(i, c)) == 0) continue;
      const Rational f = t_(i, c);
      for (std::size_t k = 0; k <= cols(); ++k) {
        if (sgn(t_(r, k)) != 0) t_(i, k) -= f * t_(r, k);
      }
    }
    basis_[r] = c;
  }

  // Bland's rule iterations over columns [first, last). Returns false when
  // the objective is unbounded.
  bool optimize(std::size_t first, std::size_t last) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t c = first; c < last; ++c) {
        if (sgn(t_(obj(), c)) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (free_row_[r] || sgn(t_(r, enter)) <= 0) continue;
        Rational ratio = t_(r, rhs()) / t_(r, enter);
        if (leave == kNone || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> free_row_;
};

}  // namespace

LpResult maximize(const Matrix& a, const RationalVector& b, const RationalVector& c) {
  const std::size_t m = a.rows();
  const std::size_t d = a.cols();
  if (b.size() != m || c.size() != d) throw InternalError("lp: dimension mismatch");

  // Columns: x (d, free) | s (m, surplus) | artificials (m).
  const std::size_t s0 = d;
  const std::size_t a0 = d + m;
  Tableau tab(m, d + 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) tab.at(i, j) = a(i, j);
    tab.at(i, s0 + i) = -1;
    tab.at(i, tab.rhs()) = b[i];
  }

  // Free variables enter the basis first and never leave.
  std::vector<bool> used(m, false);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!used[i] && sgn(tab.at(i, j)) != 0) {
        tab.pivot(i, j);
        used[i] = true;
        tab.free_row()[i] = true;
        break;
      }
    }
  }

  // Phase 1 on the remaining rows.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.free_row()[i]) continue;
    if (sgn(tab.at(i, tab.rhs())) < 0) {
      for (std::size_t k = 0; k <= tab.cols(); ++k) tab.at(i, k) = -tab.at(i, k);
    }
    tab.at(i, a0 + i) = 1;
    tab.basis()[i] = a0 + i;
    // objective: maximize -sum(art), row stores +1 on artificials, then
    // eliminate the basic artificial.
    for (std::size_t k = 0; k <= tab.cols(); ++k) {
      if (k < a0 && sgn(tab.at(i, k)) != 0) tab.at(tab.obj(), k) -= tab.at(i, k);
    }
    tab.at(tab.obj(), tab.rhs()) -= tab.at(i, tab.rhs());
  }
  tab.optimize(s0, a0);
  if (sgn(tab.at(tab.obj(), tab.rhs())) != 0) return {LpStatus::infeasible, {}, {}};

  // Drive zero-level artificials out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.free_row()[i] || tab.basis()[i] < a0) continue;
    for (std::size_t k = s0; k < a0; ++k) {
      if (sgn(tab.at(i, k)) != 0) {
        tab.pivot(i, k);
        break;
      }
    }
  }

  // Phase 2 objective.
  for (std::size_t k = 0; k <= tab.cols(); ++k) tab.at(tab.obj(), k) = 0;
  for (std::size_t j = 0; j < d; ++j) tab.at(tab.obj(), j) = -c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bv = tab.basis()[i];
    if (bv == kNone || sgn(tab.at(tab.obj(), bv)) == 0) continue;
    const Rational f = tab.at(tab.obj(), bv);
    for (std::size_t k = 0; k <= tab.cols(); ++k) {
      if (sgn(tab.at(i, k)) != 0) tab.at(tab.obj(), k) -= f * tab.at(i, k);
    }
  }
  // Artificials left basic sit on redundant rows at level zero; their
  // columns are never entered again.
  std::vector<bool> basic(tab.cols(), false);
  for (auto bv : tab.basis()) {
    if (bv != kNone) basic[bv] = true;
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!basic[j] && sgn(tab.at(tab.obj(), j)) != 0) return {LpStatus::unbounded, {}, {}};
  }
  if (!tab.optimize(s0, a0)) return {LpStatus::unbounded, {}, {}};

  LpResult result;
  result.status = LpStatus::optimal;
  result.x.assign(d, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < d) result.x[tab.basis()[i]] = tab.at(i, tab.rhs());
  }
  result.value = dot(c, result.x);
  return result;
}

std::optional<RationalVector> find_feasible(const Matrix& rows, const RationalVector& rhs) {
  auto r = maximize(rows, rhs, RationalVector(rows.cols()));
  if (r.status != LpStatus::optimal) return std::nullopt;
  return std::move(r.x);
}

}  // namespace mstfan
