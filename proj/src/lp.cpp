#include "reliabench/lp.hpp"

#include <algorithm>
#include <optional>

#include "reliabench/errors.hpp"

namespace reliabench {

LinearProgram::LinearProgram(std::size_t variables) : variables_(variables), objective_(variables) {
  if (variables_ == 0) throw Error(ErrorKind::Validation, "linear program needs at least one variable");
}

void LinearProgram::set_objective(std::vector<Rational> coefficients) {
  for (auto& c : coefficients) c.canonicalize();
  objective_ = std::move(coefficients);
  validate();
}

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation, Rational bound) {
  for (auto& c : coefficients) c.canonicalize();
  bound.canonicalize();
  constraints_.push_back({std::move(coefficients), relation, std::move(bound)});
  validate();
}

void LinearProgram::validate() const {
  if (objective_.size() != variables_) {
    throw Error(ErrorKind::Validation, "objective has " + std::to_string(objective_.size()) +
                                           " coefficients for " + std::to_string(variables_) + " variables");
  }
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    if (constraints_[r].coefficients.size() != variables_) {
      throw Error(ErrorKind::Validation, "constraint " + std::to_string(r) + " has " +
                                             std::to_string(constraints_[r].coefficients.size()) +
                                             " coefficients for " + std::to_string(variables_) + " variables");
    }
  }
}

bool LpSolution::integral() const {
  return std::all_of(assignment.begin(), assignment.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau in equality form. Rows are the explicit constraints followed
// by the upper bounds; each row has been scaled so its right-hand side is
// non-negative and owns one identity column (slack or artificial) that starts
// in the basis.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : structural_(lp.variables()) {
    struct Row {
      std::vector<Rational> coefficients;
      Relation relation;
      Rational rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints()) rows.push_back({c.coefficients, c.relation, c.bound});
    for (std::size_t j = 0; j < structural_; ++j) {
      std::vector<Rational> unit(structural_);
      unit[j] = 1;
      rows.push_back({std::move(unit), Relation::LessEqual, Rational(1)});
    }
    const std::size_t m = rows.size();
    flipped_.assign(m, false);
    for (auto& row : rows) {
      if (row.rhs < 0) {
        for (auto& a : row.coefficients) a = -a;
        row.rhs = -row.rhs;
        if (row.relation == Relation::LessEqual) {
          row.relation = Relation::GreaterEqual;
        } else if (row.relation == Relation::GreaterEqual) {
          row.relation = Relation::LessEqual;
        }
        flipped_[static_cast<std::size_t>(&row - rows.data())] = true;
      }
    }

    // Column layout: structural | slack-or-surplus per inequality | artificial per >=/= row.
    std::size_t columns = structural_;
    std::vector<std::optional<std::size_t>> slack(m), artificial(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].relation != Relation::Equal) slack[i] = columns++;
    }
    first_artificial_ = columns;
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].relation != Relation::LessEqual) artificial[i] = columns++;
    }
    columns_ = columns;

    cells_.assign(m, std::vector<Rational>(columns_ + 1));
    basis_.resize(m);
    identity_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto& cells = cells_[i];
      for (std::size_t j = 0; j < structural_; ++j) cells[j] = rows[i].coefficients[j];
      if (slack[i]) cells[*slack[i]] = rows[i].relation == Relation::LessEqual ? 1 : -1;
      if (artificial[i]) cells[*artificial[i]] = 1;
      cells[columns_] = rows[i].rhs;
      identity_[i] = rows[i].relation == Relation::LessEqual ? *slack[i] : *artificial[i];
      basis_[i] = identity_[i];
    }
  }

  std::size_t rows() const { return cells_.size(); }
  std::size_t columns() const { return columns_; }
  bool is_artificial(std::size_t column) const { return column >= first_artificial_; }
  bool has_artificials() const { return first_artificial_ < columns_; }

  // Loads costs and recomputes reduced costs d_j = c_B B^-1 A_j - c_j.
  void set_costs(std::vector<Rational> costs) {
    costs_ = std::move(costs);
    reduced_.assign(columns_ + 1, Rational(0));
    for (std::size_t j = 0; j <= columns_; ++j) {
      Rational d = j < columns_ ? Rational(-costs_[j]) : Rational(0);
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(costs_[basis_[i]]) != 0 && sgn(cells_[i][j]) != 0) d += costs_[basis_[i]] * cells_[i][j];
      }
      reduced_[j] = d;
    }
  }

  // Maximises the loaded costs. Returns false on unboundedness.
  bool optimise(bool allow_artificial_entry) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (!allow_artificial_entry && is_artificial(j)) continue;
        if (sgn(reduced_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        const auto& a = cells_[i][*entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = cells_[i][columns_] / a;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    ++pivots_;
    auto& prow = cells_[r];
    const Rational inv = 1 / prow[e];
    for (auto& v : prow) {
      if (sgn(v) != 0) v *= inv;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(cells_[i][e]) == 0) continue;
      const Rational factor = cells_[i][e];
      auto& row = cells_[i];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (sgn(prow[j]) != 0) row[j] -= factor * prow[j];
      }
    }
    if (sgn(reduced_[e]) != 0) {
      const Rational factor = reduced_[e];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (sgn(prow[j]) != 0) reduced_[j] -= factor * prow[j];
      }
    }
    basis_[r] = e;
  }

  // Pivots basic artificials (all at zero after a feasible phase one) out on
  // any non-artificial column. Rows with no such column are redundant and
  // keep their artificial at zero forever.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows(); ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(cells_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Rational objective_value() const { return reduced_[columns_]; }

  std::vector<Rational> structural_values() const {
    std::vector<Rational> x(structural_);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = cells_[i][columns_];
    }
    return x;
  }

  // y_i = reduced cost of row i's identity column, undoing the rhs sign flip.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      y[i] = reduced_[identity_[i]] + costs_[identity_[i]];
      if (flipped_[i]) y[i] = -y[i];
    }
    return y;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t structural_;
  std::size_t columns_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_;
  std::vector<bool> flipped_;
  std::vector<Rational> costs_;
  std::vector<Rational> reduced_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& program) {
  program.validate();
  Tableau tableau(program);
  LpSolution solution;

  if (tableau.has_artificials()) {
    std::vector<Rational> phase_one(tableau.columns());
    for (std::size_t j = 0; j < tableau.columns(); ++j) {
      if (tableau.is_artificial(j)) phase_one[j] = -1;
    }
    tableau.set_costs(std::move(phase_one));
    tableau.optimise(true);
    if (sgn(tableau.objective_value()) < 0) {
      solution.status = LpStatus::Infeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.expel_artificials();
  }

  std::vector<Rational> costs(tableau.columns());
  std::copy(program.objective().begin(), program.objective().end(), costs.begin());
  tableau.set_costs(std::move(costs));
  if (!tableau.optimise(false)) {
    solution.status = LpStatus::Unbounded;
    solution.pivots = tableau.pivots();
    return solution;
  }

  solution.status = LpStatus::Optimal;
  solution.assignment = tableau.structural_values();
  solution.value = tableau.objective_value();
  auto y = tableau.duals();
  const auto explicit_rows = program.constraints().size();
  solution.constraint_duals.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(explicit_rows));
  solution.bound_duals.assign(y.begin() + static_cast<std::ptrdiff_t>(explicit_rows), y.end());
  solution.pivots = tableau.pivots();
  return solution;
}

bool certify_duality(const LinearProgram& program, const LpSolution& solution) {
  if (!solution.optimal()) return false;
  const auto n = program.variables();
  const auto& rows = program.constraints();
  if (solution.assignment.size() != n || solution.constraint_duals.size() != rows.size() ||
      solution.bound_duals.size() != n) {
    return false;
  }

  // Primal feasibility and value.
  Rational primal;
  for (std::size_t j = 0; j < n; ++j) {
    if (!in_unit_interval(solution.assignment[j])) return false;
    primal += program.objective()[j] * solution.assignment[j];
  }
  if (primal != solution.value) return false;
  for (const auto& row : rows) {
    Rational lhs;
    for (std::size_t j = 0; j < n; ++j) lhs += row.coefficients[j] * solution.assignment[j];
    if ((row.relation == Relation::LessEqual && lhs > row.bound) ||
        (row.relation == Relation::GreaterEqual && lhs < row.bound) ||
        (row.relation == Relation::Equal && lhs != row.bound)) {
      return false;
    }
  }

  // Dual signs, dual feasibility A^T y >= c, and equal objective b . y.
  Rational dual;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& y = solution.constraint_duals[r];
    if ((rows[r].relation == Relation::LessEqual && y < 0) || (rows[r].relation == Relation::GreaterEqual && y > 0)) {
      return false;
    }
    dual += rows[r].bound * y;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& z = solution.bound_duals[j];
    if (z < 0) return false;
    dual += z;
    Rational column = z;
    for (std::size_t r = 0; r < rows.size(); ++r) column += rows[r].coefficients[j] * solution.constraint_duals[r];
    if (column < program.objective()[j]) return false;
  }
  return dual == solution.value;
}

}  // namespace reliabench
