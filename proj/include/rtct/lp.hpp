#pragma once

#include "rtct/model.hpp"
#include "rtct/rational.hpp"
#include "rtct/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtct {

enum class PointSource;  // fp.hpp

struct LpProblem {
  std::vector<Rational> objective;  // maximize objective . C
  std::vector<ConstraintRow> rows;  // coeffs . C <= bound, C >= 0 implicit
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Rational> optimum;
  std::optional<ExecVector> argmax;
  std::vector<std::string> binding_rows;  // labels of rows tight at argmax
};

/// Exact rational two-phase simplex, Bland's pivot rule. Deterministic for a
/// fixed input; rows keep their given order.
LpOutcome lp_solve(const LpProblem& problem);

/// Irredundant subset of rows defining the same region over C >= 0: returns
/// indices into the input, ascending. Duplicates (equal after positive
/// scaling) collapse onto their first occurrence; a row is then dropped iff
/// maximizing it over the remaining rows stays within its bound (exact LP,
/// weakly redundant rows removed; an unbounded probe keeps the row).
std::vector<std::size_t> eliminate_redundant(const std::vector<ConstraintRow>& rows);

/// Maximizes weights . C over the EDF-schedulable region, using the minimal
/// constraint system; the optimum equals the one over the full deadline set.
LpOutcome max_reward_edf(const TaskSet& ts, const std::vector<Rational>& weights);

struct FpOptimum {
  LpOutcome outcome;
  std::vector<Rational> selected_points;  // winning schedulability point per task
};

/// Maximizes weights . C over the FP-schedulable region: enumerates one
/// schedulability point per task, solves the per-selection LP, and keeps the
/// best outcome. Selections whose single-row relaxation bound falls below the
/// incumbent are pruned.
FpOptimum max_reward_fp(const TaskSet& ts, const std::vector<Rational>& weights,
                        PointSource source);

}  // namespace rtct
