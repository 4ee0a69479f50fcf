#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reliabench/rational.hpp"

namespace reliabench {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<Rational> coefficients;  // dense, one per variable
  Relation relation = Relation::LessEqual;
  Rational bound;
};

/// maximize objective . x  subject to the linear constraints and 0 <= x_j <= 1.
///
/// The box is implicit: every variable is a rejection probability.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables);

  std::size_t variables() const noexcept { return variables_; }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  const std::vector<Rational>& objective() const noexcept { return objective_; }

  void set_objective(std::vector<Rational> coefficients);
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational bound);

  /// Throws ErrorKind::Validation when a row or the objective has the wrong width.
  void validate() const;

 private:
  std::size_t variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<Rational> objective_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> assignment;
  Rational value;
  /// Dual multipliers: one per explicit constraint, then one per upper bound
  /// x_j <= 1. Signs follow the maximisation convention (>= 0 on <= rows,
  /// <= 0 on >= rows, free on equalities).
  std::vector<Rational> constraint_duals;
  std::vector<Rational> bound_duals;
  std::size_t pivots = 0;

  bool optimal() const noexcept { return status == LpStatus::Optimal; }
  /// Every coordinate of the assignment is 0 or 1.
  bool integral() const;
};

/// Exact two-phase primal simplex with Bland's least-index rule, so it
/// terminates on degenerate programs. Infeasibility is a status, not an error.
LpSolution solve_lp(const LinearProgram& program);

/// Checks the solution against its dual from scratch: the assignment is
/// primal feasible, the duals are dual feasible with the right signs, and the
/// two objective values agree exactly.
bool certify_duality(const LinearProgram& program, const LpSolution& solution);

std::string to_string(LpStatus status);

}  // namespace reliabench
