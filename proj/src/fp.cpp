#include "rtct/fp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rtct {

namespace {

void require_task_index(const TaskSet& ts, std::size_t task) {
  if (task >= ts.size())
    throw std::invalid_argument("task index " + std::to_string(task + 1) + " out of range 1.." +
                                std::to_string(ts.size()));
}

void require_dm_prefix(const TaskSet& ts, std::size_t task) {
  if (!dm_ordered_prefix(ts, task))
    throw std::domain_error(
        "reduced schedulability points require deadline-monotonic task order");
}

void require_constrained(const TaskSet& ts) {
  if (ts.deadline_model() != DeadlineModel::Constrained)
    throw std::domain_error(
        "operation requires the constrained-deadline model; use the arbitrary-deadline test");
}

Rational floor_multiple(const Rational& t, const Rational& period) {
  return Rational((t / period).floor()) * period;
}

/// Workload of tasks ahead of `task` released in [0, t), plus (job+1) copies
/// of the task itself.
Rational workload(const TaskSet& ts, const ExecVector& c, std::size_t task, const Rational& t,
                  long job) {
  Rational w = Rational(job + 1) * c[task];
  for (std::size_t l = 0; l < task; ++l) w += Rational((t / ts[l].period).ceil()) * c[l];
  return w;
}

std::vector<Rational> release_points(const TaskSet& ts, std::size_t task, const Rational& limit,
                                     bool include_zero) {
  std::set<Rational> pts;
  for (std::size_t l = 0; l < task; ++l) {
    for (BigInt j = include_zero ? 0 : 1;; ++j) {
      Rational instant = Rational(j) * ts[l].period;
      if (instant > limit) break;
      pts.insert(instant);
    }
  }
  pts.insert(limit);
  return {pts.begin(), pts.end()};
}

std::vector<Rational> reduced_recursion(const TaskSet& ts, std::size_t task, const Rational& t) {
  std::set<Rational> cur{t};
  for (std::size_t level = task; level-- > 0;) {
    std::set<Rational> next;
    for (const Rational& s : cur) {
      next.insert(s);
      next.insert(floor_multiple(s, ts[level].period));
    }
    cur = std::move(next);
  }
  std::vector<Rational> pts;
  for (const Rational& p : cur)
    if (p.sign() > 0) pts.push_back(p);
  return pts;
}

std::vector<Rational> points_for(const TaskSet& ts, std::size_t task, const Rational& deadline,
                                 PointSource source) {
  if (source == PointSource::Reduced) {
    require_dm_prefix(ts, task);
    return reduced_recursion(ts, task, deadline);
  }
  return release_points(ts, task, deadline, true);
}

/// One job passes when some positive point carries its workload; t = 0 never
/// certifies positive execution and is skipped.
std::optional<Rational> certifying_point(const TaskSet& ts, const ExecVector& c, std::size_t task,
                                         long job, const std::vector<Rational>& points) {
  for (const Rational& t : points) {
    if (t.sign() <= 0) continue;
    if (workload(ts, c, task, t, job) <= t) return t;
  }
  return std::nullopt;
}

}  // namespace

FpConstraint k_vector(const TaskSet& ts, std::size_t task, const Rational& t, long job) {
  require_task_index(ts, task);
  if (t.sign() < 0) throw std::invalid_argument("schedulability point must be nonnegative");
  if (job < 0) throw std::invalid_argument("job index must be nonnegative");
  FpConstraint row;
  row.coeffs.assign(ts.size(), Rational(0));
  for (std::size_t l = 0; l < task; ++l) row.coeffs[l] = Rational((t / ts[l].period).ceil());
  row.coeffs[task] = Rational(job + 1);
  row.bound = t;
  row.task = task;
  row.point = t;
  if (job != 0) row.job = job;
  return row;
}

SchedPointSet lehoczky_points(const TaskSet& ts, std::size_t task) {
  require_task_index(ts, task);
  SchedPointSet out;
  out.task = task;
  out.provenance = PointSource::Lehoczky;
  out.points = release_points(ts, task, ts[task].deadline, true);
  return out;
}

SchedPointSet reduced_points(const TaskSet& ts, std::size_t task, const Rational& t) {
  require_task_index(ts, task);
  require_dm_prefix(ts, task);
  if (t.sign() <= 0) throw std::invalid_argument("reduced point set needs a positive instant");
  SchedPointSet out;
  out.task = task;
  out.provenance = PointSource::Reduced;
  out.points = reduced_recursion(ts, task, t);
  return out;
}

FpVerdict fp_schedulable(const TaskSet& ts, const ExecVector& c, PointSource source) {
  require_constrained(ts);
  require_exec_vector(ts, c);
  FpVerdict verdict;
  verdict.witness.assign(ts.size(), std::nullopt);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (c[i].sign() == 0) continue;  // a zero-length job completes at release
    auto pts = points_for(ts, i, ts[i].deadline, source);
    auto witness = certifying_point(ts, c, i, 0, pts);
    if (!witness) {
      verdict.schedulable = false;
      verdict.failing_task = i;
      return verdict;
    }
    verdict.witness[i] = witness;
  }
  verdict.schedulable = true;
  return verdict;
}

namespace {

/// Length of the level-i busy interval: least fixed point of
/// L = sum_{l<=i} ceil(L/T_l) C_l starting from the total first-job demand.
Rational busy_interval(const TaskSet& ts, const ExecVector& c, std::size_t task) {
  Rational length;
  for (std::size_t l = 0; l <= task; ++l) length += c[l];
  while (true) {
    Rational next;
    for (std::size_t l = 0; l <= task; ++l)
      next += Rational((length / ts[l].period).ceil()) * c[l];
    if (next == length) return length;
    length = next;
  }
}

FpArbitraryVerdict fp_arbitrary_impl(const TaskSet& ts, const ExecVector& c,
                                     std::optional<PointSource> forced) {
  require_exec_vector(ts, c);
  FpArbitraryVerdict verdict;
  verdict.lastbusy.assign(ts.size(), 0);

  Rational util = total_utilization(ts, c);
  if (util > Rational(1)) {
    verdict.schedulable = false;  // busy interval never closes
    return verdict;
  }

  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (c[i].sign() == 0) continue;
    const Rational length = busy_interval(ts, c, i);
    BigInt jobs = (length / ts[i].period).ceil();
    if (jobs > 1000000)
      throw std::runtime_error("level-" + std::to_string(i + 1) +
                               " busy interval spans over 10^6 jobs; refusing to enumerate");
    long last = jobs > 0 ? static_cast<long>(jobs.get_si()) - 1 : 0;
    verdict.lastbusy[i] = last;

    // Release points only: the floor-projection set can miss a certifying
    // instant once check windows stretch past the first deadline (it stays
    // sound but turns pessimistic), so the exact test never uses it here.
    const PointSource source = forced ? *forced : PointSource::Lehoczky;
    for (long j = 0; j <= last; ++j) {
      const Rational deadline = Rational(j) * ts[i].period + ts[i].deadline;
      auto pts = points_for(ts, i, deadline, source);
      if (!certifying_point(ts, c, i, j, pts)) {
        verdict.schedulable = false;
        verdict.failure = FpJobFailure{i, j};
        return verdict;
      }
    }
  }
  verdict.schedulable = true;
  return verdict;
}

}  // namespace

FpArbitraryVerdict fp_schedulable_arbitrary(const TaskSet& ts, const ExecVector& c) {
  return fp_arbitrary_impl(ts, c, std::nullopt);
}

FpArbitraryVerdict fp_schedulable_arbitrary_with(const TaskSet& ts, const ExecVector& c,
                                                 PointSource source) {
  return fp_arbitrary_impl(ts, c, source);
}

AndOrRegion fp_region(const TaskSet& ts, PointSource source) {
  require_constrained(ts);
  AndOrRegion region;
  region.dim = ts.size();
  region.groups.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (const Rational& t : points_for(ts, i, ts[i].deadline, source)) {
      if (t.sign() <= 0) continue;
      FpConstraint k = k_vector(ts, i, t);
      ConstraintRow row;
      row.coeffs = std::move(k.coeffs);
      row.bound = t;
      row.label = "task=" + std::to_string(i + 1) + " t=" + t.str();
      region.groups[i].push_back(std::move(row));
    }
  }
  return region;
}

}  // namespace rtct
