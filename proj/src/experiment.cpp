#include "rtct/experiment.hpp"

#include "rtct/edf.hpp"
#include "rtct/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace rtct {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t bounded_uniform(std::uint64_t lo, std::uint64_t hi, SplitMix64& gen) {
  if (hi < lo) throw std::invalid_argument("empty uniform range");
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return gen.next();  // full 64-bit range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  while (true) {
    std::uint64_t raw = gen.next();
    if (raw < limit) return lo + raw % span;
  }
}

namespace {

ExperimentRecord evaluate_instance(const ExperimentConfig& cfg, std::uint64_t id) {
  SplitMix64 gen(cfg.seed ^ (0x51ed2701a3c1f7b5ULL * (id + 1)));
  ExperimentRecord rec;
  rec.id = id;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cfg.task_count; ++i) {
    long period = static_cast<long>(
        bounded_uniform(static_cast<std::uint64_t>(cfg.period_lo),
                        static_cast<std::uint64_t>(cfg.period_hi), gen));
    long deadline = cfg.deadline_rule == DeadlineRule::EqualT
                        ? period
                        : static_cast<long>(bounded_uniform(1, static_cast<std::uint64_t>(period), gen));
    rec.periods.push_back(period);
    rec.deadlines.push_back(deadline);
    tasks.push_back(Task{Rational(period), Rational(deadline), std::nullopt});
  }
  TaskSet ts(std::move(tasks), DeadlineModel::Constrained);
  rec.hyperperiod = hyperperiod(ts).num();
  rec.d_count = deadline_set(ts).instants.size();
  rec.dmin_count = minimal_deadlines(ts).instants.size();
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg, bool parallel) {
  if (cfg.task_count == 0) throw std::invalid_argument("experiment needs at least one task");
  if (cfg.period_lo < 2 || cfg.period_lo > cfg.period_hi)
    throw std::invalid_argument("period range must satisfy 2 <= lo <= hi");
  if (cfg.sample_count == 0) throw std::invalid_argument("experiment needs at least one sample");

  std::vector<ExperimentRecord> records(cfg.sample_count);
  const long long total = static_cast<long long>(cfg.sample_count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < total; ++i)
      records[static_cast<std::size_t>(i)] =
          evaluate_instance(cfg, static_cast<std::uint64_t>(i));
  } else {
    for (long long i = 0; i < total; ++i)
      records[static_cast<std::size_t>(i)] =
          evaluate_instance(cfg, static_cast<std::uint64_t>(i));
  }
  return records;
}

std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& cfg) {
  return run_experiment(cfg, false);
}

std::vector<EnvelopeBucket> hyperperiod_envelope(const std::vector<ExperimentRecord>& records) {
  std::vector<EnvelopeBucket> buckets;
  if (records.empty()) return buckets;

  int max_exp = 0;
  for (const ExperimentRecord& r : records) {
    int e = static_cast<int>(mpz_sizeinbase(r.hyperperiod.get_mpz_t(), 2)) - 1;
    max_exp = std::max(max_exp, e);
  }
  buckets.resize(static_cast<std::size_t>(max_exp) + 1);
  for (int e = 0; e <= max_exp; ++e) {
    EnvelopeBucket& b = buckets[static_cast<std::size_t>(e)];
    b.exponent = e;
    mpz_ui_pow_ui(b.h_lo.get_mpz_t(), 2, static_cast<unsigned long>(e));
    mpz_ui_pow_ui(b.h_hi.get_mpz_t(), 2, static_cast<unsigned long>(e) + 1);
  }
  for (const ExperimentRecord& r : records) {
    int e = static_cast<int>(mpz_sizeinbase(r.hyperperiod.get_mpz_t(), 2)) - 1;
    EnvelopeBucket& b = buckets[static_cast<std::size_t>(e)];
    ++b.samples;
    b.d_count_max = std::max(b.d_count_max, r.d_count);
    b.dmin_count_max = std::max(b.dmin_count_max, r.dmin_count);
  }
  std::size_t running = 0;
  for (EnvelopeBucket& b : buckets) {
    running = std::max(running, b.dmin_count_max);
    b.dmin_envelope = running;
  }
  return buckets;
}

double fitted_log_coefficient(const std::vector<ExperimentRecord>& records) {
  double c = 0.0;
  for (const ExperimentRecord& r : records) {
    if (r.hyperperiod < 2) continue;
    double log_h = std::log2(r.hyperperiod.get_d());
    c = std::max(c, static_cast<double>(r.dmin_count) / log_h);
  }
  return c;
}

namespace {

std::string joined(const std::vector<long>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(xs[i]);
  }
  return out;
}

const char* rule_name(DeadlineRule rule) {
  return rule == DeadlineRule::EqualT ? "equal_T" : "uniform_1_to_T";
}

}  // namespace

void write_experiment_csv(const ExperimentConfig& cfg,
                          const std::vector<ExperimentRecord>& records, std::ostream& os) {
  os << "# tasks=" << cfg.task_count << " periods=uniform{" << cfg.period_lo << ".."
     << cfg.period_hi << "} deadlines=" << rule_name(cfg.deadline_rule) << " samples="
     << cfg.sample_count << " seed=" << cfg.seed << "\n";
  os << "id,periods,deadlines,H,D_count,Dmin_count\n";
  for (const ExperimentRecord& r : records)
    os << r.id << ',' << joined(r.periods) << ',' << joined(r.deadlines) << ','
       << r.hyperperiod.get_str() << ',' << r.d_count << ',' << r.dmin_count << '\n';
}

void write_envelope_csv(const std::vector<EnvelopeBucket>& buckets, double fitted_c,
                        std::ostream& os) {
  char fitted[64];
  std::snprintf(fitted, sizeof fitted, "%.6f", fitted_c);
  os << "# dmin_count <= c*log2(H) with fitted c=" << fitted << "\n";
  os << "bucket,h_lo,h_hi,samples,d_count_max,dmin_count_max,dmin_envelope\n";
  for (const EnvelopeBucket& b : buckets)
    os << b.exponent << ',' << b.h_lo.get_str() << ',' << b.h_hi.get_str() << ',' << b.samples
       << ',' << b.d_count_max << ',' << b.dmin_count_max << ',' << b.dmin_envelope << '\n';
}

}  // namespace rtct
