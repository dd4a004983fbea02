#pragma once

#include "rtct/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rtct {

enum class DeadlineRule { UniformOneToT, EqualT };

struct ExperimentConfig {
  std::size_t task_count = 2;
  long period_lo = 2;
  long period_hi = 50;
  DeadlineRule deadline_rule = DeadlineRule::UniformOneToT;
  std::size_t sample_count = 1000;
  std::uint64_t seed = 1;
};

/// One sampled instance: integer periods/deadlines, its hyperperiod, the full
/// constraint count |D| (positive instants plus the sentinel) and |D_min|.
struct ExperimentRecord {
  std::uint64_t id = 0;
  std::vector<long> periods;
  std::vector<long> deadlines;
  BigInt hyperperiod;
  std::size_t d_count = 0;
  std::size_t dmin_count = 0;
};

/// Evaluates `config.sample_count` seeded instances. Each instance derives
/// its own generator from (seed, id), so the output is byte-identical across
/// serial and OpenMP execution and any thread count. Records come back
/// sorted by id.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, bool parallel);

/// Serial reference path; run_experiment(config, true) must match it exactly.
std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& config);

struct EnvelopeBucket {
  int exponent = 0;  // bucket covers H in [2^exponent, 2^(exponent+1))
  BigInt h_lo, h_hi;
  std::size_t samples = 0;
  std::size_t d_count_max = 0;
  std::size_t dmin_count_max = 0;
  std::size_t dmin_envelope = 0;  // running max over buckets up to this one
};

/// Geometric (ratio-2) buckets over the hyperperiod; the raw per-bucket max
/// of |D_min| may dip, the envelope column is its prefix max.
std::vector<EnvelopeBucket> hyperperiod_envelope(const std::vector<ExperimentRecord>& records);

/// Smallest c with |D_min| <= c * log2(H) across all records with H >= 2.
double fitted_log_coefficient(const std::vector<ExperimentRecord>& records);

void write_experiment_csv(const ExperimentConfig& config,
                          const std::vector<ExperimentRecord>& records, std::ostream& os);
void write_envelope_csv(const std::vector<EnvelopeBucket>& buckets, double fitted_c,
                        std::ostream& os);

/// Tiny deterministic generator used to derive per-instance streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// Uniform draw in [lo, hi] by rejection on the raw 64-bit stream; unlike
/// std::uniform_int_distribution the mapping is pinned, so seeded outputs are
/// portable across standard libraries.
std::uint64_t bounded_uniform(std::uint64_t lo, std::uint64_t hi, SplitMix64& gen);

}  // namespace rtct
