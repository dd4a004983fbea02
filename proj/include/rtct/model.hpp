#pragma once

#include "rtct/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtct {

enum class DeadlineModel { Constrained, Arbitrary };

struct Task {
  Rational period;
  Rational deadline;
  std::optional<Rational> wcet;  // absent while the execution time is a free variable
};

/// Candidate execution-time assignment, one entry per task.
using ExecVector = std::vector<Rational>;

/// Ordered task set; list position encodes fixed priority, index 0 highest.
class TaskSet {
 public:
  TaskSet(std::vector<Task> tasks, DeadlineModel model);

  std::size_t size() const { return tasks_.size(); }
  const Task& operator[](std::size_t i) const { return tasks_[i]; }
  const std::vector<Task>& tasks() const { return tasks_; }
  DeadlineModel deadline_model() const { return model_; }

  bool fully_specified() const;

 private:
  std::vector<Task> tasks_;
  DeadlineModel model_;
};

struct ValidationReport {
  bool ok = true;
  bool dm_ordered = false;  // deadlines nondecreasing in priority order
  std::vector<std::string> issues;
};

ValidationReport validate(const TaskSet& ts);

/// [C_1/T_1, ..., C_n/T_n], exact.
std::vector<Rational> utilization_vector(const TaskSet& ts, const ExecVector& c);
Rational total_utilization(const TaskSet& ts, const ExecVector& c);

/// Least positive H with H/T_i integral for every task. For canonical
/// periods p_i/q_i this is lcm(p_1..p_n)/gcd(q_1..q_n).
Rational hyperperiod(const TaskSet& ts);

/// Throws std::invalid_argument unless c has one nonnegative entry per task.
void require_exec_vector(const TaskSet& ts, const ExecVector& c);

/// Stored wcets as an ExecVector; throws if any task leaves it unspecified.
ExecVector wcet_vector(const TaskSet& ts);

/// True when deadlines are nondecreasing across tasks 0..upto (inclusive).
bool dm_ordered_prefix(const TaskSet& ts, std::size_t upto);

}  // namespace rtct
