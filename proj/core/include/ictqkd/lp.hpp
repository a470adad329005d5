#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ictqkd/errors.hpp"

namespace ictqkd {

enum class Relation { less_equal, greater_equal, equal };
enum class Sense { minimize, maximize };

struct LpConstraint {
  std::string name;
  std::vector<double> coefficients;  // dense, one per variable
  Relation relation = Relation::less_equal;
  double bound = 0.0;
};

// Dense linear program. Variables are free: every variable bound, including
// nonnegativity, is an explicit constraint row.
struct LinearProgram {
  Sense sense = Sense::minimize;
  std::vector<std::string> variable_names;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;

  int variable_count() const { return static_cast<int>(variable_names.size()); }
  // Returns the new variable's index; its objective coefficient starts at 0.
  int add_variable(const std::string& name);
  void set_objective(int variable, double coefficient);
  void add_constraint(std::string name,
                      const std::vector<std::pair<int, double>>& terms,
                      Relation relation, double bound);
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> values;  // per variable; meaningful when optimal
};

// Solver interface; the bundled implementation can be swapped for an
// external solver as long as the conformance tests agree.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LinearProgram& lp) const = 0;
  virtual std::string name() const = 0;
};

// Bundled dense two-phase simplex over bounded variables. Singleton rows
// are folded into variable bounds, rows get slack variables, and rows whose
// slack cannot absorb the initial residual get a phase-1 artificial. Dantzig
// pricing with a Bland fallback after degenerate stretches.
class SimplexSolver final : public LpSolver {
 public:
  struct Options {
    double feasibility_tol = 1e-10;
    double optimality_tol = 1e-9;
    // 0 picks a cap proportional to the problem size.
    long max_iterations = 0;
  };

  SimplexSolver() = default;
  explicit SimplexSolver(Options options) : options_(options) {}

  LpSolution solve(const LinearProgram& lp) const override;
  std::string name() const override { return "bundled-simplex"; }

 private:
  Options options_;
};

// Solves with the bundled simplex at default options.
LpSolution solve_lp(const LinearProgram& lp);

// Plain-text dump in the common LP interchange format, for debugging
// against external solvers.
std::string lp_format(const LinearProgram& lp);

}  // namespace ictqkd
