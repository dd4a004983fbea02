#pragma once

#include "rtct/model.hpp"
#include "rtct/rational.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace rtct {

enum class Policy { FixedPriority, Edf };

struct TraceSegment {
  Rational start, end;
  std::size_t task = 0;  // 0-based
  long job = 0;
};

struct JobRecord {
  std::size_t task = 0;
  long job = 0;
  Rational release;
  Rational deadline;
  std::optional<Rational> completion;  // empty: unfinished at the horizon
};

struct DeadlineMiss {
  std::size_t task = 0;
  long job = 0;
  Rational deadline;
  std::optional<Rational> completion;  // filled when the late job still finishes in-horizon
};

struct Trace {
  Policy policy = Policy::FixedPriority;
  Rational horizon;
  std::vector<TraceSegment> segments;  // ordered, non-overlapping
  std::vector<JobRecord> jobs;         // every job released before the horizon
  std::optional<DeadlineMiss> first_miss;
};

struct SimOptions {
  bool stop_on_first_miss = false;
  std::size_t max_events = 5000000;  // refusal cap for impractical horizons
};

/// H for constrained fixed priority, H + max D otherwise.
Rational default_horizon(const TaskSet& ts, Policy policy);

/// Preemptive simulation of the synchronous release pattern r_{i,j} = j T_i
/// with exact rational event times. Ties at an instant process releases
/// first; EDF breaks equal absolute deadlines by task index; a zero-length
/// job completes at its release.
Trace simulate(const TaskSet& ts, const ExecVector& c, Policy policy, const Rational& horizon,
               const SimOptions& options = {});

struct ResponseTimes {
  std::vector<std::optional<Rational>> worst;  // per task, over completed jobs
  std::vector<JobRecord> unfinished;           // jobs excluded from the maxima
};

ResponseTimes response_times(const Trace& trace, std::size_t task_count);

/// CSV rows `start,end,task,job` (1-based task numbers).
void write_trace_csv(const Trace& trace, std::ostream& os);

}  // namespace rtct
