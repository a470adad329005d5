#include "ictqkd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

namespace ictqkd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Entries below this never serve as pivots or ratio-test blockers.
constexpr double kPivotTol = 1e-11;
// Steps below this count as degenerate for the anti-cycling switch.
constexpr double kDegenerateStep = 1e-12;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::equal: return "=";
  }
  return "?";
}

enum class VarState : unsigned char { basic, at_lower, at_upper, free_zero };

// Two-phase primal simplex over bounded variables. Columns are the
// structural variables followed by one slack per retained row and the
// phase-1 artificials. The full tableau B^{-1}A is kept dense together
// with B^{-1}b, so the starting diagonal basis needs no factorization.
class SimplexEngine {
 public:
  SimplexEngine(const LinearProgram& lp, const SimplexSolver::Options& opt)
      : lp_(lp), opt_(opt) {}

  LpSolution run() {
    lp_.validate();
    if (!(opt_.feasibility_tol > 0.0) || !(opt_.optimality_tol > 0.0)) {
      throw DomainError("solver tolerances must be positive");
    }
    if (!preprocess()) return {LpStatus::infeasible, 0.0, {}};
    build_tableau();

    if (artificial_count_ > 0) {
      std::vector<double> phase1_cost(cols_, 0.0);
      for (int j = cols_ - artificial_count_; j < cols_; ++j) phase1_cost[j] = 1.0;
      if (!iterate(phase1_cost)) {
        throw SolverError("phase-1 objective unbounded; numerical failure");
      }
      double residue = 0.0;
      for (int j = cols_ - artificial_count_; j < cols_; ++j) residue += value_of(j);
      if (residue > infeasibility_threshold()) return {LpStatus::infeasible, 0.0, {}};
      // Pin artificials at zero so phase 2 cannot revisit them.
      for (int j = cols_ - artificial_count_; j < cols_; ++j) lo_[j] = hi_[j] = 0.0;
    }

    std::vector<double> phase2_cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) phase2_cost[j] = cost_[j];
    if (!iterate(phase2_cost)) return {LpStatus::unbounded, 0.0, {}};

    LpSolution out;
    out.status = LpStatus::optimal;
    out.values.assign(n_, 0.0);
    std::vector<double> full(cols_, 0.0);
    for (int j = 0; j < cols_; ++j) full[j] = value_of(j);
    for (int j = 0; j < n_; ++j) out.values[j] = full[j];
    double objective = 0.0;
    for (int j = 0; j < n_; ++j) objective += lp_.objective[j] * out.values[j];
    out.objective = objective;
    verify(out.values);
    return out;
  }

 private:
  double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }

  double value_of(int j) const {
    switch (state_[j]) {
      case VarState::at_lower: return lo_[j];
      case VarState::at_upper: return hi_[j];
      case VarState::free_zero: return 0.0;
      case VarState::basic: break;
    }
    return beta_[row_of_[j]];
  }

  double infeasibility_threshold() const {
    return 100.0 * opt_.feasibility_tol * std::max(1.0, rhs_scale_) *
           std::max<double>(1.0, kept_rows_.size());
  }

  // Folds empty and singleton rows into variable bounds. Returns false when
  // the bounds alone are contradictory.
  bool preprocess() {
    const double ftol = opt_.feasibility_tol;
    n_ = lp_.variable_count();
    const double sign = lp_.sense == Sense::maximize ? -1.0 : 1.0;
    cost_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = sign * lp_.objective[j];
    lo_.assign(n_, -kInf);
    hi_.assign(n_, kInf);

    for (int r = 0; r < static_cast<int>(lp_.constraints.size()); ++r) {
      const LpConstraint& row = lp_.constraints[r];
      int nonzero = -1;
      int count = 0;
      for (int j = 0; j < n_ && count < 2; ++j) {
        if (row.coefficients[j] != 0.0) {
          nonzero = j;
          ++count;
        }
      }
      if (count == 0) {
        const double b = row.bound;
        const bool ok = row.relation == Relation::less_equal  ? b >= -ftol
                        : row.relation == Relation::greater_equal ? b <= ftol
                                                                   : std::abs(b) <= ftol;
        if (!ok) return false;
        continue;
      }
      if (count == 1) {
        const double a = row.coefficients[nonzero];
        const double v = row.bound / a;
        Relation rel = row.relation;
        if (a < 0.0 && rel != Relation::equal) {
          rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
        }
        if (rel != Relation::greater_equal) hi_[nonzero] = std::min(hi_[nonzero], v);
        if (rel != Relation::less_equal) lo_[nonzero] = std::max(lo_[nonzero], v);
        continue;
      }
      kept_rows_.push_back(r);
    }

    for (int j = 0; j < n_; ++j) {
      if (lo_[j] > hi_[j]) {
        if (lo_[j] > hi_[j] + ftol * std::max(1.0, std::abs(lo_[j]))) return false;
        lo_[j] = hi_[j] = 0.5 * (lo_[j] + hi_[j]);
      }
    }
    return true;
  }

  void build_tableau() {
    const int m = static_cast<int>(kept_rows_.size());
    rhs_scale_ = 0.0;
    for (int r : kept_rows_) rhs_scale_ = std::max(rhs_scale_, std::abs(lp_.constraints[r].bound));

    // Slack bounds encode the row relation once rows become equalities.
    for (int r : kept_rows_) {
      switch (lp_.constraints[r].relation) {
        case Relation::less_equal: lo_.push_back(0.0); hi_.push_back(kInf); break;
        case Relation::greater_equal: lo_.push_back(-kInf); hi_.push_back(0.0); break;
        case Relation::equal: lo_.push_back(0.0); hi_.push_back(0.0); break;
      }
    }

    state_.assign(n_ + m, VarState::free_zero);
    for (int j = 0; j < n_ + m; ++j) {
      if (std::isfinite(lo_[j])) state_[j] = VarState::at_lower;
      else if (std::isfinite(hi_[j])) state_[j] = VarState::at_upper;
    }

    std::vector<double> residual(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const LpConstraint& row = lp_.constraints[kept_rows_[i]];
      double acc = row.bound;
      for (int j = 0; j < n_; ++j) {
        if (row.coefficients[j] != 0.0) acc -= row.coefficients[j] * value_of(j);
      }
      residual[i] = acc;
    }

    // A slack absorbs the residual when its bounds allow; otherwise the row
    // gets an artificial carrying the clamped remainder.
    std::vector<int> artificial_rows;
    std::vector<double> artificial_sign;
    basis_.assign(m, -1);
    beta_.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const int slack = n_ + i;
      if (residual[i] >= lo_[slack] - opt_.feasibility_tol &&
          residual[i] <= hi_[slack] + opt_.feasibility_tol) {
        basis_[i] = slack;
        state_[slack] = VarState::basic;
        beta_[i] = std::clamp(residual[i], lo_[slack], hi_[slack]);
        continue;
      }
      const double slack_value = std::clamp(residual[i], lo_[slack], hi_[slack]);
      state_[slack] = slack_value == lo_[slack] ? VarState::at_lower : VarState::at_upper;
      artificial_rows.push_back(i);
      artificial_sign.push_back(residual[i] - slack_value > 0.0 ? 1.0 : -1.0);
    }

    artificial_count_ = static_cast<int>(artificial_rows.size());
    cols_ = n_ + m + artificial_count_;
    tab_.assign(static_cast<std::size_t>(m) * cols_, 0.0);
    rhs_col_.assign(m, 0.0);
    row_of_.assign(cols_, -1);
    lo_.resize(cols_, 0.0);
    hi_.resize(cols_, kInf);
    state_.resize(cols_, VarState::at_lower);

    for (int i = 0; i < m; ++i) {
      const LpConstraint& row = lp_.constraints[kept_rows_[i]];
      for (int j = 0; j < n_; ++j) at(i, j) = row.coefficients[j];
      at(i, n_ + i) = 1.0;
      rhs_col_[i] = row.bound;
    }
    for (int k = 0; k < artificial_count_; ++k) {
      const int i = artificial_rows[k];
      const int col = n_ + m + k;
      // The basic artificial column must be the unit vector, so a row whose
      // leftover is negative is negated wholesale.
      if (artificial_sign[k] < 0.0) {
        double* row = tab_.data() + static_cast<std::size_t>(i) * cols_;
        for (int j = 0; j < cols_; ++j) row[j] = -row[j];
        rhs_col_[i] = -rhs_col_[i];
      }
      at(i, col) = 1.0;
      basis_[i] = col;
      state_[col] = VarState::basic;
      const int slack = n_ + i;
      const double slack_value = value_of(slack);
      beta_[i] = (residual[i] - slack_value) * artificial_sign[k];
    }
    for (int i = 0; i < m; ++i) row_of_[basis_[i]] = i;
  }

  void compute_reduced_costs(const std::vector<double>& cost, std::vector<double>& z) const {
    z = cost;
    const int m = static_cast<int>(basis_.size());
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = tab_.data() + static_cast<std::size_t>(i) * cols_;
      for (int j = 0; j < cols_; ++j) z[j] -= cb * row[j];
    }
    for (int i = 0; i < m; ++i) z[basis_[i]] = 0.0;
  }

  void refresh_basic_values() {
    const int m = static_cast<int>(basis_.size());
    beta_ = rhs_col_;
    for (int j = 0; j < cols_; ++j) {
      if (state_[j] == VarState::basic) continue;
      const double v = value_of(j);
      if (v == 0.0) continue;
      for (int i = 0; i < m; ++i) beta_[i] -= at(i, j) * v;
    }
  }

  // Runs the pivot loop for the given cost vector. Returns false on an
  // unbounded improving direction.
  bool iterate(const std::vector<double>& cost) {
    const int m = static_cast<int>(basis_.size());
    const double otol = opt_.optimality_tol;
    std::vector<double> z;
    compute_reduced_costs(cost, z);

    long cap = opt_.max_iterations > 0
                   ? opt_.max_iterations
                   : std::max<long>(2000, 60L * (m + cols_));
    long iterations = 0;
    int degenerate_run = 0;
    bool bland = false;

    for (;;) {
      if (++iterations > cap) {
        throw SolverError("simplex did not converge within " + std::to_string(cap) +
                          " iterations");
      }
      if (iterations % 256 == 0) {
        compute_reduced_costs(cost, z);
        refresh_basic_values();
      }

      int jin = -1;
      int dir = 0;
      double best = otol;
      for (int j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::basic || lo_[j] == hi_[j]) continue;
        const double zj = z[j];
        int d;
        double gain;
        if (zj < -otol && state_[j] != VarState::at_upper) {
          d = 1;
          gain = -zj;
        } else if (zj > otol && state_[j] != VarState::at_lower) {
          d = -1;
          gain = zj;
        } else {
          continue;
        }
        if (bland) { jin = j; dir = d; break; }
        if (gain > best) { best = gain; jin = j; dir = d; }
      }
      if (jin < 0) return true;

      // Ratio test: the entering variable moves by dir*t until it reaches its
      // opposite bound or a basic variable reaches one of its own.
      double t_own = hi_[jin] - lo_[jin];
      if (state_[jin] == VarState::free_zero) t_own = kInf;
      double t_min = t_own;
      int blocking = -1;
      bool leaves_at_upper = false;
      double blocking_pivot = 0.0;
      for (int i = 0; i < m; ++i) {
        const double g = at(i, jin);
        if (std::abs(g) <= kPivotTol) continue;
        const double rate = -dir * g;
        const int bj = basis_[i];
        double t;
        bool to_upper;
        if (rate < 0.0) {
          if (!std::isfinite(lo_[bj])) continue;
          t = std::max(beta_[i] - lo_[bj], 0.0) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(hi_[bj])) continue;
          t = std::max(hi_[bj] - beta_[i], 0.0) / rate;
          to_upper = true;
        }
        bool take;
        if (blocking < 0) {
          take = t < t_min;
        } else if (bland) {
          take = t < t_min - kDegenerateStep ||
                 (t <= t_min + kDegenerateStep && bj < basis_[blocking]);
        } else {
          take = t < t_min - kDegenerateStep ||
                 (t <= t_min + kDegenerateStep && std::abs(g) > std::abs(blocking_pivot));
        }
        if (take) {
          t_min = std::min(t, t_min);
          blocking = i;
          leaves_at_upper = to_upper;
          blocking_pivot = g;
        }
      }

      if (!std::isfinite(t_min)) return false;

      if (degenerate_run > 40) bland = true;
      if (t_min > kDegenerateStep) {
        degenerate_run = 0;
        bland = false;
      } else {
        ++degenerate_run;
      }

      if (blocking < 0) {
        // Bound flip: no basis change.
        const double step = dir * t_min;
        for (int i = 0; i < m; ++i) beta_[i] -= step * at(i, jin);
        state_[jin] = dir > 0 ? VarState::at_upper : VarState::at_lower;
        continue;
      }

      const double entering_value = value_of(jin) + dir * t_min;
      const double step = dir * t_min;
      for (int i = 0; i < m; ++i) {
        if (i != blocking) beta_[i] -= step * at(i, jin);
      }
      const int leaving = basis_[blocking];
      state_[leaving] = leaves_at_upper ? VarState::at_upper : VarState::at_lower;
      row_of_[leaving] = -1;
      basis_[blocking] = jin;
      state_[jin] = VarState::basic;
      row_of_[jin] = blocking;
      beta_[blocking] = entering_value;

      double* prow = tab_.data() + static_cast<std::size_t>(blocking) * cols_;
      const double pivot = prow[jin];
      const double inv = 1.0 / pivot;
      for (int j = 0; j < cols_; ++j) prow[j] *= inv;
      prow[jin] = 1.0;
      rhs_col_[blocking] *= inv;
      for (int i = 0; i < m; ++i) {
        if (i == blocking) continue;
        double* row = tab_.data() + static_cast<std::size_t>(i) * cols_;
        const double f = row[jin];
        if (f == 0.0) continue;
        for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
        row[jin] = 0.0;
        rhs_col_[i] -= f * rhs_col_[blocking];
      }
      const double zf = z[jin];
      if (zf != 0.0) {
        for (int j = 0; j < cols_; ++j) z[j] -= zf * prow[j];
      }
      z[jin] = 0.0;
    }
  }

  // Residual check against the original rows; a violation here means the
  // tableau drifted and the answer cannot be trusted.
  void verify(const std::vector<double>& x) const {
    for (const LpConstraint& row : lp_.constraints) {
      double acc = 0.0;
      double scale = std::abs(row.bound);
      for (int j = 0; j < n_; ++j) {
        const double term = row.coefficients[j] * x[j];
        acc += term;
        scale = std::max(scale, std::abs(term));
      }
      double violation = 0.0;
      switch (row.relation) {
        case Relation::less_equal: violation = acc - row.bound; break;
        case Relation::greater_equal: violation = row.bound - acc; break;
        case Relation::equal: violation = std::abs(acc - row.bound); break;
      }
      if (violation > 1e-7 + 1e-9 * scale) {
        throw SolverError("simplex lost feasibility (residual " +
                          format_number(violation) + " on row '" + row.name + "')");
      }
    }
  }

  const LinearProgram& lp_;
  SimplexSolver::Options opt_;
  int n_ = 0;
  int cols_ = 0;
  int artificial_count_ = 0;
  double rhs_scale_ = 0.0;
  std::vector<int> kept_rows_;
  std::vector<double> cost_;
  std::vector<double> lo_, hi_;
  std::vector<double> tab_;
  std::vector<double> rhs_col_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<VarState> state_;
};

}  // namespace

int LinearProgram::add_variable(const std::string& name) {
  if (name.empty()) throw DomainError("variable name must be nonempty");
  variable_names.push_back(name);
  objective.resize(variable_names.size(), 0.0);
  return variable_count() - 1;
}

void LinearProgram::set_objective(int variable, double coefficient) {
  if (variable < 0 || variable >= variable_count()) {
    throw DomainError("objective index out of range");
  }
  if (!std::isfinite(coefficient)) throw DomainError("objective coefficient must be finite");
  objective.resize(variable_names.size(), 0.0);
  objective[variable] = coefficient;
}

void LinearProgram::add_constraint(std::string name,
                                   const std::vector<std::pair<int, double>>& terms,
                                   Relation relation, double bound) {
  LpConstraint row;
  row.name = std::move(name);
  row.coefficients.assign(variable_names.size(), 0.0);
  for (const auto& [index, value] : terms) {
    if (index < 0 || index >= variable_count()) {
      throw DomainError("constraint term index out of range");
    }
    if (!std::isfinite(value)) throw DomainError("constraint coefficient must be finite");
    row.coefficients[index] += value;
  }
  if (!std::isfinite(bound)) throw DomainError("constraint bound must be finite");
  row.relation = relation;
  row.bound = bound;
  constraints.push_back(std::move(row));
}

void LinearProgram::validate() const {
  const std::size_t n = variable_names.size();
  std::unordered_set<std::string> seen;
  for (const std::string& name : variable_names) {
    if (name.empty()) throw DomainError("variable name must be nonempty");
    if (!seen.insert(name).second) throw DomainError("duplicate variable name '" + name + "'");
  }
  if (objective.size() != n) throw DomainError("objective length must match variable count");
  for (double c : objective) {
    if (!std::isfinite(c)) throw DomainError("objective coefficient must be finite");
  }
  for (const LpConstraint& row : constraints) {
    if (row.coefficients.size() != n) {
      throw DomainError("constraint '" + row.name + "' width must match variable count");
    }
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) {
        throw DomainError("constraint '" + row.name + "' has a nonfinite coefficient");
      }
    }
    if (!std::isfinite(row.bound)) {
      throw DomainError("constraint '" + row.name + "' has a nonfinite bound");
    }
  }
}

LpSolution SimplexSolver::solve(const LinearProgram& lp) const {
  SimplexEngine engine(lp, options_);
  return engine.run();
}

LpSolution solve_lp(const LinearProgram& lp) { return SimplexSolver().solve(lp); }

std::string lp_format(const LinearProgram& lp) {
  lp.validate();
  std::string out = lp.sense == Sense::maximize ? "Maximize\n" : "Minimize\n";
  const auto write_row = [&](const std::vector<double>& coeffs) {
    bool first = true;
    for (int j = 0; j < lp.variable_count(); ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      if (first) {
        out += a < 0.0 ? "- " : "";
        first = false;
      } else {
        out += a < 0.0 ? " - " : " + ";
      }
      out += format_number(std::abs(a));
      out += ' ';
      out += lp.variable_names[j];
    }
    if (first) out += "0";
  };
  out += " obj: ";
  write_row(lp.objective);
  out += "\nSubject To\n";
  for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
    const LpConstraint& row = lp.constraints[r];
    out += ' ';
    out += row.name.empty() ? "c" + std::to_string(r) : row.name;
    out += ": ";
    write_row(row.coefficients);
    out += ' ';
    out += relation_text(row.relation);
    out += ' ';
    out += format_number(row.bound);
    out += '\n';
  }
  out += "Bounds\n";
  for (const std::string& name : lp.variable_names) {
    out += ' ' + name + " free\n";
  }
  out += "End\n";
  return out;
}

}  // namespace ictqkd
