#include "rtct/edf.hpp"

#include "rtct/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rtct {

namespace {

/// Jobs of one task with both release and deadline inside [0, t].
BigInt job_count(const Task& task, const Rational& t) {
  if (t < task.deadline) return 0;
  return ((t - task.deadline) / task.period).floor() + 1;
}

ConstraintRow to_row(const EdfConstraint& h) {
  ConstraintRow row;
  row.coeffs = h.coeffs;
  row.bound = Rational(1);
  row.label = "t=" + h.instant.str();
  return row;
}

}  // namespace

Rational dbf(const TaskSet& ts, const ExecVector& c, const Rational& t) {
  require_exec_vector(ts, c);
  if (t.sign() < 0) throw std::invalid_argument("demand bound function needs t >= 0");
  Rational demand;
  for (std::size_t i = 0; i < ts.size(); ++i) demand += Rational(job_count(ts[i], t)) * c[i];
  return demand;
}

DeadlineSet deadline_set(const TaskSet& ts) {
  Rational max_deadline = ts[0].deadline;
  for (std::size_t i = 1; i < ts.size(); ++i) max_deadline = max(max_deadline, ts[i].deadline);
  DeadlineSet out;
  out.horizon = hyperperiod(ts) + max_deadline;
  std::set<Rational> instants;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (BigInt j = 0;; ++j) {
      Rational d = Rational(j) * ts[i].period + ts[i].deadline;
      if (d > out.horizon) break;
      instants.insert(d);
    }
  }
  out.instants.push_back(Rational(0));
  out.instants.insert(out.instants.end(), instants.begin(), instants.end());
  return out;
}

EdfConstraint h_vector(const TaskSet& ts, const Rational& t) {
  if (t.sign() < 0) throw std::invalid_argument("demand row needs t >= 0");
  EdfConstraint h;
  h.instant = t;
  h.coeffs.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (t.sign() == 0)
      h.coeffs.push_back(Rational(1) / ts[i].period);
    else
      h.coeffs.push_back(Rational(job_count(ts[i], t)) / t);
  }
  return h;
}

EdfVerdict edf_schedulable(const TaskSet& ts, const ExecVector& c) {
  require_exec_vector(ts, c);
  EdfVerdict verdict;
  for (const Rational& t : deadline_set(ts).instants) {
    EdfConstraint h = h_vector(ts, t);
    Rational lhs;
    for (std::size_t i = 0; i < ts.size(); ++i) lhs += h.coeffs[i] * c[i];
    if (lhs > Rational(1)) {
      verdict.schedulable = false;
      verdict.violated_instant = t;
      return verdict;
    }
  }
  verdict.schedulable = true;
  return verdict;
}

Polytope edf_region(const TaskSet& ts) {
  Polytope region;
  region.dim = ts.size();
  for (const Rational& t : deadline_set(ts).instants) region.rows.push_back(to_row(h_vector(ts, t)));
  return region;
}

MinimalDeadlines minimal_deadlines(const TaskSet& ts) {
  DeadlineSet full = deadline_set(ts);

  // Rows equal up to positive scaling describe one half-space; credit it to
  // the smallest positive instant so the reported subset is deterministic.
  // The sentinel only represents itself when no deadline row coincides.
  std::map<std::vector<Rational>, Rational> credited;
  for (const Rational& t : full.instants) {
    EdfConstraint h = h_vector(ts, t);
    auto it = credited.find(h.coeffs);
    if (it == credited.end()) {
      credited.emplace(std::move(h.coeffs), t);
    } else if (it->second.sign() == 0 && t.sign() > 0) {
      it->second = t;
    }
  }

  std::vector<Rational> instants;
  instants.reserve(credited.size());
  for (const auto& entry : credited) instants.push_back(entry.second);
  std::sort(instants.begin(), instants.end());

  std::vector<ConstraintRow> rows;
  rows.reserve(instants.size());
  for (const Rational& t : instants) rows.push_back(to_row(h_vector(ts, t)));

  MinimalDeadlines out;
  out.horizon = full.horizon;
  for (std::size_t idx : eliminate_redundant(rows)) {
    out.instants.push_back(instants[idx]);
    out.rows.push_back(rows[idx]);
  }
  return out;
}

}  // namespace rtct
