#include "rtct/sim.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace rtct {

Rational default_horizon(const TaskSet& ts, Policy policy) {
  Rational h = hyperperiod(ts);
  if (policy == Policy::FixedPriority && ts.deadline_model() == DeadlineModel::Constrained)
    return h;
  Rational max_deadline = ts[0].deadline;
  for (std::size_t i = 1; i < ts.size(); ++i) max_deadline = max(max_deadline, ts[i].deadline);
  return h + max_deadline;
}

namespace {

struct SimJob {
  std::size_t task;
  long job;
  Rational release;
  Rational deadline;
  Rational remaining;
};

struct Simulation {
  const TaskSet& ts;
  const ExecVector& c;
  Policy policy;
  Rational horizon;
  SimOptions options;

  std::vector<SimJob> jobs;
  std::vector<std::size_t> record_of;  // job slot -> index into trace.jobs
  Trace trace;

  /// Pending = released, unfinished. Ordering is the dispatch priority.
  struct ByPriority {
    const Simulation* sim;
    bool operator()(std::size_t a, std::size_t b) const {
      const SimJob& ja = sim->jobs[a];
      const SimJob& jb = sim->jobs[b];
      if (sim->policy == Policy::Edf && ja.deadline != jb.deadline)
        return ja.deadline < jb.deadline;
      if (ja.task != jb.task) return ja.task < jb.task;
      return ja.job < jb.job;
    }
  };
  std::set<std::size_t, ByPriority> pending{ByPriority{this}};

  std::vector<long> next_job;  // per task

  Simulation(const TaskSet& ts_, const ExecVector& c_, Policy policy_, const Rational& horizon_,
             const SimOptions& options_)
      : ts(ts_), c(c_), policy(policy_), horizon(horizon_), options(options_) {
    next_job.assign(ts.size(), 0);
    trace.policy = policy;
    trace.horizon = horizon;
  }

  std::optional<Rational> next_release_time() const {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      Rational r = Rational(next_job[i]) * ts[i].period;
      if (r >= horizon) continue;
      if (!best || r < *best) best = r;
    }
    return best;
  }

  void release_at(const Rational& now) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      while (true) {
        Rational r = Rational(next_job[i]) * ts[i].period;
        if (r != now || r >= horizon) break;
        const long j = next_job[i]++;
        SimJob job{i, j, r, r + ts[i].deadline, c[i]};
        trace.jobs.push_back(JobRecord{i, j, job.release, job.deadline, std::nullopt});
        if (job.remaining.sign() == 0) {
          trace.jobs.back().completion = r;  // zero demand completes on release
          continue;
        }
        jobs.push_back(job);
        record_of.push_back(trace.jobs.size() - 1);
        pending.insert(jobs.size() - 1);
      }
    }
  }

  void note_miss(const SimJob& job) {
    if (trace.first_miss) return;
    trace.first_miss = DeadlineMiss{job.task, job.job, job.deadline, std::nullopt};
  }

  void complete(std::size_t slot, const Rational& now) {
    trace.jobs[record_of[slot]].completion = now;
    const SimJob& job = jobs[slot];
    if (trace.first_miss && trace.first_miss->task == job.task &&
        trace.first_miss->job == job.job && !trace.first_miss->completion)
      trace.first_miss->completion = now;
    pending.erase(slot);
  }

  void append_segment(const Rational& start, const Rational& end, const SimJob& job) {
    if (start == end) return;
    if (!trace.segments.empty()) {
      TraceSegment& last = trace.segments.back();
      if (last.end == start && last.task == job.task && last.job == job.job) {
        last.end = end;
        return;
      }
    }
    trace.segments.push_back(TraceSegment{start, end, job.task, job.job});
  }

  void run() {
    Rational now(0);
    std::size_t events = 0;
    while (true) {
      if (++events > options.max_events)
        throw std::runtime_error("simulation exceeded the event cap; horizon impractical");
      release_at(now);
      if (trace.first_miss && options.stop_on_first_miss) return;
      if (now >= horizon) return;

      std::optional<Rational> release = next_release_time();
      if (pending.empty()) {
        if (!release) return;  // nothing left to do before the horizon
        now = *release;
        continue;
      }

      const std::size_t running = *pending.begin();
      SimJob& job = jobs[running];

      Rational next = now + job.remaining;  // completion
      if (release && *release < next) next = *release;
      if (next > horizon) next = horizon;
      for (std::size_t slot : pending) {
        const Rational& d = jobs[slot].deadline;
        if (d > now && d < next) next = d;
      }

      append_segment(now, next, job);
      job.remaining -= next - now;
      now = next;

      if (job.remaining.sign() == 0) complete(running, now);
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        if (jobs[*it].deadline == now) {
          note_miss(jobs[*it]);
          break;  // earliest-deadline pending job suffices for the report
        }
      }
    }
  }
};

}  // namespace

Trace simulate(const TaskSet& ts, const ExecVector& c, Policy policy, const Rational& horizon,
               const SimOptions& options) {
  require_exec_vector(ts, c);
  if (horizon.sign() <= 0) throw std::invalid_argument("simulation horizon must be positive");
  Simulation sim(ts, c, policy, horizon, options);
  sim.run();
  return sim.trace;
}

ResponseTimes response_times(const Trace& trace, std::size_t task_count) {
  ResponseTimes out;
  out.worst.assign(task_count, std::nullopt);
  for (const JobRecord& rec : trace.jobs) {
    if (!rec.completion) {
      out.unfinished.push_back(rec);
      continue;
    }
    Rational response = *rec.completion - rec.release;
    if (!out.worst[rec.task] || response > *out.worst[rec.task]) out.worst[rec.task] = response;
  }
  return out;
}

void write_trace_csv(const Trace& trace, std::ostream& os) {
  os << "start,end,task,job\n";
  for (const TraceSegment& seg : trace.segments)
    os << seg.start.str() << ',' << seg.end.str() << ',' << seg.task + 1 << ',' << seg.job
       << '\n';
}

}  // namespace rtct
