#include "hypcoh/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <type_traits>

#include "hypcoh/error.hpp"

namespace hypcoh {

std::size_t LpProblem::add_column(const Rational& cost, Column entries, const Rational& lower_bound) {
  for (const auto& [i, a] : entries)
    if (i >= rows) throw Error(Errc::InvalidArgument, "column entry outside the row range");
  objective.push_back(cost);
  columns.push_back(std::move(entries));
  lower.push_back(lower_bound);
  return columns.size() - 1;
}

namespace {

template <class T>
struct Num;

template <>
struct Num<Rational> {
  static int sign(const Rational& x) { return sgn(x); }
  static Rational from(const Rational& x) { return x; }
};

template <>
struct Num<double> {
  static constexpr double eps = 1e-9;
  static int sign(double x) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
  static double from(const Rational& x) { return x.get_d(); }
};

template <class T>
struct Eta {
  std::size_t row;
  std::vector<std::pair<std::size_t, T>> entries;  // includes the pivot row
};

/// B^{-1} = E_k ... E_1 D with D the diagonal sign matrix of the artificial basis.
template <class T>
class InverseBasis {
 public:
  using Vec = std::vector<T>;

  explicit InverseBasis(std::vector<int> sign) : sign_(std::move(sign)) {}

  void ftran(Vec& v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sign_[i] < 0) v[i] = -v[i];
    for (const Eta<T>& e : etas_) {
      if (Num<T>::sign(v[e.row]) == 0) {
        v[e.row] = 0;
        continue;
      }
      T pivot = v[e.row];
      for (const auto& [i, eta] : e.entries) {
        if (i == e.row)
          v[i] = pivot * eta;
        else
          v[i] += pivot * eta;
      }
    }
  }

  void btran(Vec& u) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      T s = 0;
      for (const auto& [i, eta] : it->entries)
        if (Num<T>::sign(u[i]) != 0) s += u[i] * eta;
      u[it->row] = s;
    }
    for (std::size_t i = 0; i < u.size(); ++i)
      if (sign_[i] < 0) u[i] = -u[i];
  }

  void push(std::size_t row, const Vec& alpha) {
    Eta<T> e{row, {}};
    T inv = 1 / alpha[row];
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i == row)
        e.entries.emplace_back(i, inv);
      else if (Num<T>::sign(alpha[i]) != 0)
        e.entries.emplace_back(i, T(-alpha[i] * inv));
    }
    etas_.push_back(std::move(e));
  }

  std::size_t size() const { return etas_.size(); }
  void clear() { etas_.clear(); }

 private:
  std::vector<int> sign_;
  std::vector<Eta<T>> etas_;
};

struct NumericTrouble {};

/// Two-phase revised simplex over T. Column ids >= n denote artificials.
template <class T>
class Simplex {
 public:
  using Vec = std::vector<T>;

  /// `spread` > 0 relaxes every lower bound by a distinct amount of that
  /// order, which removes degeneracy in the floating-point pass.
  explicit Simplex(const LpProblem& p, double spread = 0) : m_(p.rows), n_(p.cols()), sign_(m_, 1), inv_(sign_) {
    cols_.resize(n_);
    cost_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      cost_[j] = Num<T>::from(p.objective[j]);
      for (const auto& [i, a] : p.columns[j])
        if (sgn(a) != 0) cols_[j].emplace_back(i, Num<T>::from(a));
    }
    Vec shifted(m_);
    std::vector<Rational> exact = p.rhs;
    for (std::size_t j = 0; j < n_; ++j)
      if (sgn(p.lower[j]) != 0)
        for (const auto& [i, a] : p.columns[j]) exact[i] -= a * p.lower[j];
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = sgn(exact[i]) < 0 ? -1 : 1;
      shifted[i] = Num<T>::from(exact[i]);
    }
    if constexpr (std::is_same_v<T, double>) {
      if (spread > 0) {
        std::uint64_t state = 0x9e3779b97f4a7c15ULL;
        for (std::size_t j = 0; j < n_; ++j) {
          state ^= state << 13;
          state ^= state >> 7;
          state ^= state << 17;
          double eps = spread * (1.0 + double(state % 1000003) / 1000003.0);
          for (const auto& [i, a] : cols_[j]) shifted[i] += a * eps;
        }
        for (std::size_t i = 0; i < m_; ++i) sign_[i] = shifted[i] < 0 ? -1 : 1;
      }
    }
    shifted_ = std::move(shifted);
    inv_ = InverseBasis<T>(sign_);
    basis_.resize(m_);
    devex_.assign(n_, 1.0);
    is_basic_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = true;
    }
    xb_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) xb_[i] = shifted_[i] < 0 ? T(-shifted_[i]) : shifted_[i];
  }

  /// Replaces the artificial start by `columns` if that basis is nonsingular
  /// and primal feasible. Returns whether it was accepted.
  bool warm_start(const std::vector<std::size_t>& columns) {
    std::vector<std::size_t> saved = basis_;
    std::vector<char> saved_flags = is_basic_;
    Vec saved_x = xb_;
    std::fill(is_basic_.begin(), is_basic_.end(), false);
    std::vector<std::size_t> structural;
    std::vector<char> taken(m_, false);
    for (std::size_t j : columns) {
      if (j >= n_) {
        taken[j - n_] = true;
        basis_[j - n_] = j;
        is_basic_[j] = true;
      } else {
        structural.push_back(j);
      }
    }
    bool ok = columns.size() == m_ && assign_structural(structural, taken);
    if (ok) {
      for (std::size_t i = 0; i < m_; ++i)
        if (Num<T>::sign(xb_[i]) < 0) ok = false;
    }
    if (!ok) {
      basis_ = std::move(saved);
      is_basic_ = std::move(saved_flags);
      xb_ = std::move(saved_x);
      inv_.clear();
    }
    return ok;
  }

  LpStatus run() {
    if (infeasibility_sign() > 0) iterate(1);
    if (infeasibility_sign() > 0) {
      duals_ = duals(1);
      return LpStatus::Infeasible;
    }
    iterate(2);
    duals_ = duals(2);
    return LpStatus::Optimal;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const Vec& basic_values() const { return xb_; }
  const Vec& dual_values() const { return duals_; }
  std::size_t pivots() const { return pivots_; }

 private:
  int infeasibility_sign() const {
    T s = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) s += xb_[i];
    if constexpr (std::is_same_v<T, double>) {
      // Perturbation residue left on redundant rows.
      return s > 1e-6 ? 1 : 0;
    }
    return Num<T>::sign(s);
  }

  T cost(std::size_t j, int phase) const {
    if (phase == 1) return j >= n_ ? T(1) : T(0);
    return j >= n_ ? T(0) : cost_[j];
  }

  Vec column(std::size_t j) const {
    Vec v(m_);
    if (j >= n_)
      v[j - n_] = sign_[j - n_];
    else
      for (const auto& [i, a] : cols_[j]) v[i] = a;
    return v;
  }

  T dot(const Vec& y, std::size_t j) const {
    T s = 0;
    for (const auto& [i, a] : cols_[j])
      if (Num<T>::sign(y[i]) != 0) s += y[i] * a;
    return s;
  }

  Vec duals(int phase) const {
    Vec y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = cost(basis_[i], phase);
    inv_.btran(y);
    return y;
  }

  void pivot(std::size_t row, std::size_t entering, const Vec& alpha) {
    T theta = xb_[row] / alpha[row];
    if (Num<T>::sign(theta) != 0)
      for (std::size_t i = 0; i < m_; ++i)
        if (Num<T>::sign(alpha[i]) != 0) xb_[i] -= theta * alpha[i];
    xb_[row] = theta;
    is_basic_[basis_[row]] = false;
    is_basic_[entering] = true;
    basis_[row] = entering;
    inv_.push(row, alpha);
    ++pivots_;
    if (inv_.size() >= kReinvertEvery) reinvert();
  }

  // Pivots the structural columns into the rows not held by artificials.
  bool assign_structural(std::vector<std::size_t> structural, std::vector<char> taken) {
    inv_.clear();
    std::sort(structural.begin(), structural.end(),
              [&](std::size_t a, std::size_t b) { return cols_[a].size() < cols_[b].size(); });
    for (std::size_t j : structural) {
      Vec alpha = column(j);
      inv_.ftran(alpha);
      std::size_t row = m_;
      if constexpr (std::is_same_v<T, double>) {
        double best = Num<double>::eps;
        for (std::size_t i = 0; i < m_; ++i)
          if (!taken[i] && std::abs(alpha[i]) > best) {
            best = std::abs(alpha[i]);
            row = i;
          }
      } else {
        for (std::size_t i = 0; i < m_; ++i)
          if (!taken[i] && sgn(alpha[i]) != 0) {
            row = i;
            break;
          }
      }
      if (row == m_) return false;
      taken[row] = true;
      basis_[row] = j;
      is_basic_[j] = true;
      inv_.push(row, alpha);
    }
    xb_ = shifted_;
    inv_.ftran(xb_);
    return true;
  }

  void reinvert() {
    std::vector<char> taken(m_, false);
    std::vector<std::size_t> structural;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_)
        taken[i] = true;
      else
        structural.push_back(basis_[i]);
    }
    if (!assign_structural(structural, taken)) {
      if constexpr (std::is_same_v<T, double>) throw NumericTrouble{};
      throw Error(Errc::Internal, "singular basis during reinversion");
    }
    if constexpr (std::is_same_v<T, double>) {
      for (auto& x : xb_)
        if (x < 0 && x > -Num<double>::eps) x = 0;
    }
  }

  void iterate(int phase) {
    std::size_t degenerate_streak = 0;
    const std::size_t limit = 50 * (m_ + n_) + 1000;
    Vec y;
    for (std::size_t iter = 0;; ++iter) {
      if constexpr (std::is_same_v<T, double>) {
        if (iter > limit) throw NumericTrouble{};
      }
      // The double pass updates y from the pivot row between refreshes.
      if (!std::is_same_v<T, double> || iter % 32 == 0) y = duals(phase);
      bool bland = std::is_same_v<T, Rational> && degenerate_streak >= kStallLimit;
      std::size_t entering = n_;
      T best = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        T d = cost(j, phase) - dot(y, j);
        if (Num<T>::sign(d) >= 0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if constexpr (std::is_same_v<T, double>) {
          // Devex: largest d^2 / w.
          double score = d * d / devex_[j];
          if (entering == n_ || score > best) {
            best = score;
            entering = j;
          }
        } else if (entering == n_ || d < best) {
          best = d;
          entering = j;
        }
      }
      if (entering == n_) return;

      Vec alpha = column(entering);
      inv_.ftran(alpha);
      std::size_t row = m_;
      T ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        // Artificials left at zero after phase 1 must not move.
        bool pinned = phase == 2 && basis_[i] >= n_ && Num<T>::sign(alpha[i]) != 0;
        if (!pinned && Num<T>::sign(alpha[i]) <= 0) continue;
        T r = pinned ? T(0) : T(xb_[i] / alpha[i]);
        if (row == m_ || r < ratio || (r == ratio && prefer(basis_[i], basis_[row]))) {
          row = i;
          ratio = r;
        }
      }
      if (row == m_) {
        if constexpr (std::is_same_v<T, double>) throw NumericTrouble{};
        throw Error(Errc::Unbounded, "objective unbounded below");
      }
      degenerate_streak = Num<T>::sign(ratio) == 0 ? degenerate_streak + 1 : 0;
      if constexpr (std::is_same_v<T, double>) {
        Vec rho = update_devex(row, entering, alpha);
        double step = (cost(entering, phase) - dot(y, entering)) / alpha[row];
        for (std::size_t i = 0; i < m_; ++i) y[i] += step * rho[i];
      }
      pivot(row, entering, alpha);
    }
  }

  // Returns row `row` of the basis inverse.
  Vec update_devex(std::size_t row, std::size_t entering, const Vec& alpha) {
    Vec rho(m_);
    rho[row] = 1;
    inv_.btran(rho);
    const double ar = alpha[row];
    const double wq = devex_[entering];
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j] || j == entering) continue;
      double arj = dot(rho, j);
      if (arj == 0) continue;
      double r = arj / ar;
      devex_[j] = std::max(devex_[j], r * r * wq);
    }
    std::size_t leaving = basis_[row];
    if (leaving < n_) devex_[leaving] = std::max(wq / (ar * ar), 1.0);
    return rho;
  }

  // Leaving-variable tie-break: artificials first, then smallest index.
  bool prefer(std::size_t a, std::size_t b) const {
    bool art_a = a >= n_, art_b = b >= n_;
    if (art_a != art_b) return art_a;
    return a < b;
  }

  static constexpr std::size_t kReinvertEvery = 128;
  static constexpr std::size_t kStallLimit = 200;

  std::size_t m_, n_;
  std::vector<std::vector<std::pair<std::size_t, T>>> cols_;
  Vec cost_;
  Vec shifted_;
  std::vector<int> sign_;
  InverseBasis<T> inv_;
  std::vector<std::size_t> basis_;
  std::vector<char> is_basic_;
  Vec xb_;
  Vec duals_;
  std::vector<double> devex_;
  std::size_t pivots_ = 0;
};

LpOutcome exact_solve(const LpProblem& q, const std::vector<std::size_t>& hint) {
  std::vector<std::size_t> guess = hint;
  std::size_t float_pivots = 0;
  if (guess.empty()) {
    try {
      Simplex<double> approx(q, 1e-6);
      approx.run();
      guess = approx.basis();
      float_pivots = approx.pivots();
    } catch (const NumericTrouble&) {
      guess.clear();
    }
  }
  Simplex<Rational> exact(q);
  if (!guess.empty()) exact.warm_start(guess);
  LpOutcome out;
  out.status = exact.run();
  out.pivots = exact.pivots() + float_pivots;
  out.dual = exact.dual_values();
  if (out.status == LpStatus::Optimal) {
    out.primal = q.lower;
    const auto& basis = exact.basis();
    const auto& xb = exact.basic_values();
    for (std::size_t i = 0; i < q.rows; ++i)
      if (basis[i] < q.cols()) out.primal[basis[i]] += xb[i];
    out.objective = 0;
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (sgn(out.primal[j]) != 0) out.objective += q.objective[j] * out.primal[j];
  }
  return out;
}

}  // namespace

LpOutcome solve(const LpProblem& p, const std::vector<std::size_t>& basis_hint) {
  if (p.rhs.size() != p.rows || p.objective.size() != p.cols() || p.lower.size() != p.cols())
    throw Error(Errc::InvalidArgument, "inconsistent LP dimensions");
  LpProblem q = p;
  for (auto& c : q.columns)
    for (auto& [i, a] : c) a.canonicalize();
  for (auto& x : q.objective) x.canonicalize();
  for (auto& x : q.rhs) x.canonicalize();
  for (auto& x : q.lower) x.canonicalize();
  LpOutcome out = exact_solve(q, basis_hint);
  std::string why;
  if (!verify_certificate(q, out, &why)) throw Error(Errc::Internal, "LP certificate rejected: " + why);
  return out;
}

ApproxOutcome solve_approx(const LpProblem& p) {
  ApproxOutcome out;
  try {
    Simplex<double> approx(p, 1e-6);
    out.status = approx.run();
    out.dual = approx.dual_values();
    out.basis = approx.basis();
    out.ok = true;
  } catch (const NumericTrouble&) {
    out.ok = false;
  }
  return out;
}

bool verify_certificate(const LpProblem& p, const LpOutcome& out, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const std::size_t m = p.rows, n = p.cols();
  if (out.dual.size() != m) return fail("dual has wrong length");
  auto ya = [&](std::size_t j) {
    Rational s = 0;
    for (const auto& [i, a] : p.columns[j]) s += out.dual[i] * a;
    return s;
  };
  if (out.status == LpStatus::Infeasible) {
    Rational rhs = 0;
    for (std::size_t i = 0; i < m; ++i) rhs += out.dual[i] * p.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = ya(j);
      if (sgn(s) > 0) return fail("Farkas ray has y.A_j > 0 at column " + std::to_string(j));
      rhs -= s * p.lower[j];
    }
    if (sgn(rhs) <= 0) return fail("Farkas ray has y.(b - A l) <= 0");
    return true;
  }
  if (out.primal.size() != n) return fail("primal has wrong length");
  std::vector<Rational> ax(m);
  Rational primal_obj = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (out.primal[j] < p.lower[j]) return fail("primal below lower bound at column " + std::to_string(j));
    for (const auto& [i, a] : p.columns[j]) ax[i] += a * out.primal[j];
    primal_obj += p.objective[j] * out.primal[j];
  }
  for (std::size_t i = 0; i < m; ++i)
    if (ax[i] != p.rhs[i]) return fail("equality row " + std::to_string(i) + " violated");
  Rational dual_obj = 0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += out.dual[i] * p.rhs[i];
  for (std::size_t j = 0; j < n; ++j) {
    Rational reduced = p.objective[j] - ya(j);
    if (sgn(reduced) < 0) return fail("dual infeasible at column " + std::to_string(j));
    dual_obj += p.lower[j] * reduced;
  }
  if (primal_obj != dual_obj) return fail("primal and dual objectives differ");
  if (primal_obj != out.objective) return fail("reported objective differs from c.x");
  return true;
}

}  // namespace hypcoh
