#pragma once

#include "rtct/model.hpp"
#include "rtct/rational.hpp"
#include "rtct/region.hpp"

#include <optional>
#include <vector>

namespace rtct {

enum class PointSource { Lehoczky, Reduced };

/// Schedulability points for one task: the finite instants at which the
/// workload inequality may certify it. Independent of execution times.
struct SchedPointSet {
  std::size_t task = 0;  // 0-based
  PointSource provenance = PointSource::Lehoczky;
  std::vector<Rational> points;  // ascending, deduplicated; deadline always present
};

/// Workload row (ceil(t/T_1), ..., ceil(t/T_{i-1}), j+1, 0, ..., 0) . C <= t.
struct FpConstraint {
  std::vector<Rational> coeffs;
  Rational bound;  // the instant t
  std::size_t task = 0;
  Rational point;
  std::optional<long> job;  // set in the arbitrary-deadline form
};

FpConstraint k_vector(const TaskSet& ts, std::size_t task, const Rational& t, long job = 0);

/// Release instants of higher-priority tasks up to the deadline, plus the
/// deadline itself; 0 is a member whenever a higher-priority task exists.
SchedPointSet lehoczky_points(const TaskSet& ts, std::size_t task);

/// Floor-projection recursion:
///   P_0(t) = {t},  P_l(t) = P_{l-1}(floor(t/T_l) T_l) u P_{l-1}(t).
/// Returns P_{task}(t) with nonpositive points removed. Exact only under
/// deadline-monotonic ordering of the tasks ahead of `task`; refuses
/// otherwise.
SchedPointSet reduced_points(const TaskSet& ts, std::size_t task, const Rational& t);

struct FpVerdict {
  bool schedulable = false;
  /// Certifying point per task, in increasing-point order; empty optional for
  /// tasks passed trivially (zero execution time) or past the failing task.
  std::vector<std::optional<Rational>> witness;
  std::optional<std::size_t> failing_task;  // 0-based
};

/// Exact fixed-priority test for constrained deadlines: every task needs one
/// point t with workload(t) <= t.
FpVerdict fp_schedulable(const TaskSet& ts, const ExecVector& c, PointSource source);

struct FpJobFailure {
  std::size_t task = 0;
  long job = 0;
};

struct FpArbitraryVerdict {
  bool schedulable = false;
  std::vector<long> lastbusy;  // per task, index of the last job in the level-i busy interval
  std::optional<FpJobFailure> failure;
};

/// Arbitrary-deadline fixed-priority test over the level-i busy interval:
/// checks jobs 0..lastbusy(i) of each task against the release-instant point
/// sets, which stay exact for any priority order. Requires fully known
/// execution times; total utilization above 1 is rejected as unschedulable
/// outright.
FpArbitraryVerdict fp_schedulable_arbitrary(const TaskSet& ts, const ExecVector& c);

/// Same test with a forced point construction. Reduced demands DM order and
/// is sound but pessimistic here: with check windows past the first deadline
/// the floor projection can skip the one certifying instant (it only proves
/// exact for constrained deadlines). Exposed for cross-checks and study.
FpArbitraryVerdict fp_schedulable_arbitrary_with(const TaskSet& ts, const ExecVector& c,
                                                 PointSource source);

/// The schedulable-region system: one disjunctive row group per task, rows at
/// every positive schedulability point. Execution times are not consulted.
AndOrRegion fp_region(const TaskSet& ts, PointSource source);

}  // namespace rtct
