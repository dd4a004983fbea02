#pragma once

#include "rtct/edf.hpp"
#include "rtct/experiment.hpp"
#include "rtct/fp.hpp"
#include "rtct/model.hpp"
#include "rtct/sim.hpp"

#include <utility>
#include <vector>

namespace testsupport {

using namespace rtct;

/// Deterministic generator wrapper; all randomized suites are reproducible.
struct Rng {
  SplitMix64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t below(std::uint64_t n) { return bounded_uniform(0, n - 1, gen); }
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool chance(std::uint64_t one_in) { return below(one_in) == 0; }
};

/// Periods from a pool with small lcm so hyperperiods stay test-sized;
/// occasionally half-integral to keep the rational paths honest.
inline Rational random_period(Rng& r) {
  static const long nums[] = {2, 3, 4, 5, 6, 8, 10, 12};
  long num = nums[r.below(8)];
  long den = r.chance(4) ? 2 : 1;
  return Rational(num, den);
}

inline TaskSet random_taskset(Rng& r, std::size_t n, DeadlineModel model, bool dm_order) {
  static const std::pair<long, long> constrained_ratio[] = {{1, 4}, {1, 3}, {1, 2},
                                                            {2, 3}, {3, 4}, {1, 1}};
  static const std::pair<long, long> arbitrary_ratio[] = {{1, 2}, {3, 4}, {1, 1},
                                                          {3, 2}, {2, 1}, {3, 1}};
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    Rational period = random_period(r);
    auto [p, q] = model == DeadlineModel::Constrained ? constrained_ratio[r.below(6)]
                                                      : arbitrary_ratio[r.below(6)];
    tasks.push_back(Task{period, period * Rational(p, q), std::nullopt});
  }
  if (dm_order) {
    std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
      if (a.deadline != b.deadline) return a.deadline < b.deadline;
      return a.period < b.period;
    });
  }
  return TaskSet(std::move(tasks), model);
}

/// Random execution vector with total utilization drawn around the
/// feasibility boundary, so suites see schedulable and unschedulable mixes.
inline ExecVector random_exec(Rng& r, const TaskSet& ts) {
  static const std::pair<long, long> totals[] = {{1, 4}, {1, 2}, {3, 4}, {9, 10},
                                                 {1, 1}, {11, 10}, {5, 4}};
  auto [p, q] = totals[r.below(7)];
  Rational total(p, q);
  std::vector<long> share;
  long sum = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    share.push_back(r.range(1, 4));
    sum += share.back();
  }
  ExecVector c;
  for (std::size_t i = 0; i < ts.size(); ++i)
    c.push_back(total * Rational(share[i], sum) * ts[i].period);
  if (r.chance(8)) c[r.below(ts.size())] = Rational(0);
  return c;
}

inline ExecVector with_wcets(const TaskSet& ts, const ExecVector& c, TaskSet* out) {
  std::vector<Task> tasks = ts.tasks();
  for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].wcet = c[i];
  *out = TaskSet(std::move(tasks), ts.deadline_model());
  return c;
}

/// Simulator verdict for fixed priority on the default horizon.
inline bool sim_fp_schedulable(const TaskSet& ts, const ExecVector& c) {
  SimOptions opt;
  opt.stop_on_first_miss = true;
  Trace tr = simulate(ts, c, Policy::FixedPriority, default_horizon(ts, Policy::FixedPriority), opt);
  return !tr.first_miss.has_value();
}

/// Simulator verdict for EDF. Under total utilization above 1 the first miss
/// may fall beyond H + max D; demand then outgrows supply by H*(U-1) per
/// hyperperiod, so a crossing instant can be computed directly and the
/// horizon extended to cover it.
inline bool sim_edf_schedulable(const TaskSet& ts, const ExecVector& c) {
  Rational horizon = default_horizon(ts, Policy::Edf);
  Rational excess = total_utilization(ts, c) - Rational(1);
  if (excess.sign() > 0) {
    Rational h = hyperperiod(ts);
    Rational base = deadline_set(ts).instants.back();  // >= every D_i
    Rational deficit = base - dbf(ts, c, base);
    if (deficit.sign() >= 0) {  // no crossing up to base yet, force one
      BigInt cycles = (deficit / (h * excess)).floor() + 1;
      horizon = max(horizon, base + h * Rational(cycles));
    }
  }
  SimOptions opt;
  opt.stop_on_first_miss = true;
  Trace tr = simulate(ts, c, Policy::Edf, horizon, opt);
  return !tr.first_miss.has_value();
}

// Spec-figure fixtures, execution times left free.

inline TaskSet staircase_points_fixture() {  // T=(3,8,-), D=(3,8,19)
  return TaskSet({Task{Rational(3), Rational(3), std::nullopt},
                  Task{Rational(8), Rational(8), std::nullopt},
                  Task{Rational(100), Rational(19), std::nullopt}},
                 DeadlineModel::Constrained);
}

inline TaskSet two_task_fp_fixture() {  // T=(4,100), D=(3,5)
  return TaskSet({Task{Rational(4), Rational(3), std::nullopt},
                  Task{Rational(100), Rational(5), std::nullopt}},
                 DeadlineModel::Constrained);
}

inline TaskSet two_task_edf_fixture() {  // T=(4,5), D=(3,5)
  return TaskSet({Task{Rational(4), Rational(3), std::nullopt},
                  Task{Rational(5), Rational(5), std::nullopt}},
                 DeadlineModel::Constrained);
}

inline TaskSet three_task_arbitrary_fixture() {  // T=(2,5,7), D=(3,5,6)
  return TaskSet({Task{Rational(2), Rational(3), std::nullopt},
                  Task{Rational(5), Rational(5), std::nullopt},
                  Task{Rational(7), Rational(6), std::nullopt}},
                 DeadlineModel::Arbitrary);
}

inline ExecVector rat_vec(std::initializer_list<Rational> xs) { return ExecVector(xs); }

}  // namespace testsupport
