#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ictqkd/lp.hpp"

// Independent textbook simplex used to cross-check the bundled solver:
// standard form with split free variables, two phases, Bland's rule
// throughout. Dense and slow, test-only.
namespace reference_lp {

inline ictqkd::LpSolution solve(const ictqkd::LinearProgram& lp) {
  using ictqkd::LpSolution;
  using ictqkd::LpStatus;
  using ictqkd::Relation;
  using ictqkd::Sense;

  lp.validate();
  const int n = lp.variable_count();
  const int m = static_cast<int>(lp.constraints.size());
  const double tol = 1e-9;

  // Column layout: x+ | x- | slack or surplus | artificials.
  const int slack_base = 2 * n;
  int cols = 2 * n + m;
  std::vector<std::vector<double>> rows(m);
  std::vector<double> rhs(m, 0.0);
  std::vector<int> basis(m, -1);
  std::vector<int> needs_artificial;

  for (int i = 0; i < m; ++i) {
    const ictqkd::LpConstraint& c = lp.constraints[i];
    double flip = 1.0;
    Relation rel = c.relation;
    if (c.bound < 0.0) {
      flip = -1.0;
      if (rel == Relation::less_equal) rel = Relation::greater_equal;
      else if (rel == Relation::greater_equal) rel = Relation::less_equal;
    }
    rows[i].assign(cols, 0.0);
    for (int j = 0; j < n; ++j) {
      rows[i][j] = flip * c.coefficients[j];
      rows[i][n + j] = -flip * c.coefficients[j];
    }
    rhs[i] = flip * c.bound;
    if (rel == Relation::less_equal) {
      rows[i][slack_base + i] = 1.0;
      basis[i] = slack_base + i;
    } else {
      if (rel == Relation::greater_equal) rows[i][slack_base + i] = -1.0;
      needs_artificial.push_back(i);
    }
  }
  const int art_base = cols;
  cols += static_cast<int>(needs_artificial.size());
  for (int i = 0; i < m; ++i) rows[i].resize(cols, 0.0);
  for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
    const int i = needs_artificial[k];
    rows[i][art_base + static_cast<int>(k)] = 1.0;
    basis[i] = art_base + static_cast<int>(k);
  }

  std::vector<char> alive(m, 1);

  const auto run = [&](const std::vector<double>& cost, bool allow_artificials) {
    for (long iter = 0; iter < 200000; ++iter) {
      std::vector<double> z = cost;
      for (int i = 0; i < m; ++i) {
        if (!alive[i]) continue;
        const double cb = cost[basis[i]];
        if (cb == 0.0) continue;
        for (int j = 0; j < cols; ++j) z[j] -= cb * rows[i][j];
      }
      int jin = -1;
      for (int j = 0; j < cols; ++j) {
        if (!allow_artificials && j >= art_base) break;
        if (z[j] < -tol) { jin = j; break; }
      }
      if (jin < 0) return true;
      int r = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (!alive[i] || rows[i][jin] <= tol) continue;
        const double t = rhs[i] / rows[i][jin];
        if (r < 0 || t < best - 1e-15 ||
            (t <= best + 1e-15 && basis[i] < basis[r])) {
          r = i;
          best = t;
        }
      }
      if (r < 0) return false;
      const double piv = rows[r][jin];
      for (int j = 0; j < cols; ++j) rows[r][j] /= piv;
      rhs[r] /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == r || !alive[i]) continue;
        const double f = rows[i][jin];
        if (f == 0.0) continue;
        for (int j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        rhs[i] -= f * rhs[r];
        if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;
      }
      basis[r] = jin;
    }
    throw std::runtime_error("reference simplex stalled");
  };

  if (!needs_artificial.empty()) {
    std::vector<double> phase1(cols, 0.0);
    for (int j = art_base; j < cols; ++j) phase1[j] = 1.0;
    if (!run(phase1, true)) throw std::runtime_error("reference phase 1 unbounded");
    double leftover = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= art_base) leftover += rhs[i];
    }
    if (leftover > 1e-7) return {LpStatus::infeasible, 0.0, {}};
    // Swap residual artificials out of the basis; rows that offer no pivot
    // are redundant and retire.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < art_base) continue;
      int jin = -1;
      for (int j = 0; j < art_base; ++j) {
        if (std::abs(rows[i][j]) > 1e-9) { jin = j; break; }
      }
      if (jin < 0) {
        alive[i] = 0;
        continue;
      }
      const double piv = rows[i][jin];
      for (int j = 0; j < cols; ++j) rows[i][j] /= piv;
      rhs[i] /= piv;
      for (int k = 0; k < m; ++k) {
        if (k == i || !alive[k]) continue;
        const double f = rows[k][jin];
        if (f == 0.0) continue;
        for (int j = 0; j < cols; ++j) rows[k][j] -= f * rows[i][j];
        rhs[k] -= f * rhs[i];
      }
      basis[i] = jin;
    }
  }

  const double sign = lp.sense == Sense::maximize ? -1.0 : 1.0;
  std::vector<double> phase2(cols, 0.0);
  for (int j = 0; j < n; ++j) {
    phase2[j] = sign * lp.objective[j];
    phase2[n + j] = -sign * lp.objective[j];
  }
  if (!run(phase2, false)) return {LpStatus::unbounded, 0.0, {}};

  std::vector<double> value(cols, 0.0);
  for (int i = 0; i < m; ++i) {
    if (alive[i]) value[basis[i]] = rhs[i];
  }
  LpSolution out;
  out.status = LpStatus::optimal;
  out.values.assign(n, 0.0);
  out.objective = 0.0;
  for (int j = 0; j < n; ++j) {
    out.values[j] = value[j] - value[n + j];
    out.objective += lp.objective[j] * out.values[j];
  }
  return out;
}

class ReferenceSolver final : public ictqkd::LpSolver {
 public:
  ictqkd::LpSolution solve(const ictqkd::LinearProgram& lp) const override {
    return reference_lp::solve(lp);
  }
  std::string name() const override { return "reference-textbook"; }
};

}  // namespace reference_lp
