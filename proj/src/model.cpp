#include "rtct/model.hpp"

#include <stdexcept>

namespace rtct {

TaskSet::TaskSet(std::vector<Task> tasks, DeadlineModel model)
    : tasks_(std::move(tasks)), model_(model) {
  if (tasks_.empty()) throw std::invalid_argument("task set must contain at least one task");
}

bool TaskSet::fully_specified() const {
  for (const Task& t : tasks_)
    if (!t.wcet) return false;
  return true;
}

ValidationReport validate(const TaskSet& ts) {
  ValidationReport rep;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Task& t = ts[i];
    const std::string tag = "task " + std::to_string(i + 1);
    if (t.period.sign() <= 0) {
      rep.ok = false;
      rep.issues.push_back(tag + ": period must be positive, got " + t.period.str());
    }
    if (t.deadline.sign() <= 0) {
      rep.ok = false;
      rep.issues.push_back(tag + ": deadline must be positive, got " + t.deadline.str());
    }
    if (ts.deadline_model() == DeadlineModel::Constrained && t.deadline > t.period) {
      rep.ok = false;
      rep.issues.push_back(tag + ": deadline " + t.deadline.str() + " exceeds period " +
                           t.period.str() + " under the constrained model");
    }
    if (t.wcet && t.wcet->sign() < 0) {
      rep.ok = false;
      rep.issues.push_back(tag + ": negative execution time " + t.wcet->str());
    }
  }
  rep.dm_ordered = dm_ordered_prefix(ts, ts.size() - 1);
  return rep;
}

bool dm_ordered_prefix(const TaskSet& ts, std::size_t upto) {
  for (std::size_t i = 1; i <= upto && i < ts.size(); ++i)
    if (ts[i - 1].deadline > ts[i].deadline) return false;
  return true;
}

void require_exec_vector(const TaskSet& ts, const ExecVector& c) {
  if (c.size() != ts.size())
    throw std::invalid_argument("execution vector has " + std::to_string(c.size()) +
                                " entries for " + std::to_string(ts.size()) + " tasks");
  for (const Rational& v : c)
    if (v.sign() < 0) throw std::invalid_argument("negative execution time " + v.str());
}

std::vector<Rational> utilization_vector(const TaskSet& ts, const ExecVector& c) {
  require_exec_vector(ts, c);
  std::vector<Rational> u;
  u.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) u.push_back(c[i] / ts[i].period);
  return u;
}

Rational total_utilization(const TaskSet& ts, const ExecVector& c) {
  Rational sum;
  for (const Rational& u : utilization_vector(ts, c)) sum += u;
  return sum;
}

Rational hyperperiod(const TaskSet& ts) {
  BigInt num_lcm = 1, den_gcd = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].period.sign() <= 0)
      throw std::domain_error("hyperperiod requires positive periods");
    mpz_lcm(num_lcm.get_mpz_t(), num_lcm.get_mpz_t(), ts[i].period.num().get_mpz_t());
    mpz_gcd(den_gcd.get_mpz_t(), den_gcd.get_mpz_t(), ts[i].period.den().get_mpz_t());
  }
  return Rational(num_lcm, den_gcd);
}

ExecVector wcet_vector(const TaskSet& ts) {
  ExecVector c;
  c.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!ts[i].wcet)
      throw std::invalid_argument("task " + std::to_string(i + 1) +
                                  " has no execution time specified");
    c.push_back(*ts[i].wcet);
  }
  return c;
}

}  // namespace rtct
