#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hypcoh/rational.hpp"

namespace hypcoh {

/// min c.x  s.t.  A x = b,  x >= lower.  Columns are stored sparsely.
struct LpProblem {
  using Column = std::vector<std::pair<std::size_t, Rational>>;

  std::size_t rows = 0;
  std::vector<Rational> objective;
  std::vector<Column> columns;
  std::vector<Rational> rhs;
  std::vector<Rational> lower;

  explicit LpProblem(std::size_t m = 0) : rows(m), rhs(m) {}
  std::size_t cols() const { return columns.size(); }
  std::size_t add_column(const Rational& cost, Column entries, const Rational& lower_bound = 0);
};

enum class LpStatus { Optimal, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;
  /// Optimal: y with c - A^T y >= 0 and equal objectives.
  /// Infeasible: Farkas ray y with A^T y <= 0 and y.(b - A lower) > 0.
  std::vector<Rational> dual;
  Rational objective = 0;
  std::size_t pivots = 0;
};

/// Exact two-phase revised simplex (product-form inverse). Dantzig pricing,
/// switching to Bland's rule during degenerate stalls. Throws Unbounded.
/// Every outcome is checked with `verify_certificate` before being returned.
/// `basis_hint` (m column ids, artificials numbered from cols()) replaces the
/// floating-point pass when given.
LpOutcome solve(const LpProblem& p, const std::vector<std::size_t>& basis_hint = {});

/// Floating-point solve without a certificate. `ok` is false when the
/// floating-point pass ran into numerical trouble.
struct ApproxOutcome {
  bool ok = false;
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> dual;
  std::vector<std::size_t> basis;
};

ApproxOutcome solve_approx(const LpProblem& p);

/// Independent check of the certificate carried by `out`. On failure returns
/// false and describes the violated condition in `why`.
bool verify_certificate(const LpProblem& p, const LpOutcome& out, std::string* why = nullptr);

}  // namespace hypcoh
