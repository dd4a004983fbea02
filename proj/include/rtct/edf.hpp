#pragma once

#include "rtct/model.hpp"
#include "rtct/rational.hpp"
#include "rtct/region.hpp"

#include <optional>
#include <vector>

namespace rtct {

/// Absolute deadlines j T_i + D_i up to H + max D_i inclusive, plus the
/// sentinel 0 that encodes the utilization constraint.
struct DeadlineSet {
  std::vector<Rational> instants;  // ascending; instants[0] == 0
  Rational horizon;                // H + max D_i
};

/// Normalized demand row h(t) . C <= 1.
struct EdfConstraint {
  std::vector<Rational> coeffs;  // h_i(t); 1/T_i at the sentinel
  Rational instant;
};

/// Largest demand of jobs released and due within any window of length t.
Rational dbf(const TaskSet& ts, const ExecVector& c, const Rational& t);

DeadlineSet deadline_set(const TaskSet& ts);

EdfConstraint h_vector(const TaskSet& ts, const Rational& t);

struct EdfVerdict {
  bool schedulable = false;
  std::optional<Rational> violated_instant;  // earliest violated deadline (0 = utilization)
};

/// Exact preemptive-EDF test over the full deadline set; arbitrary deadline
/// models welcome.
EdfVerdict edf_schedulable(const TaskSet& ts, const ExecVector& c);

struct MinimalDeadlines {
  std::vector<Rational> instants;  // retained, ascending; 0 only if its row survives
  Rational horizon;
  std::vector<ConstraintRow> rows;  // the retained constraint system
};

/// Irredundant deadline subset: rows whose removal would enlarge the region
/// are kept, everything else (including weakly redundant rows) goes. Rows
/// equal up to scaling collapse onto the smallest positive instant.
MinimalDeadlines minimal_deadlines(const TaskSet& ts);

/// Full constraint system as a polytope, one row per deadline-set instant.
Polytope edf_region(const TaskSet& ts);

}  // namespace rtct
