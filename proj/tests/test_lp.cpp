#include "doctest.h"

#include "rtct/lp.hpp"

#include "rtct/edf.hpp"
#include "rtct/fp.hpp"
#include "rtct/region.hpp"

#include "support.hpp"

#include <algorithm>

using namespace rtct;
using namespace testsupport;

namespace {

ConstraintRow row(std::vector<Rational> coeffs, Rational bound, std::string label = "") {
  return ConstraintRow{std::move(coeffs), std::move(bound), std::move(label)};
}

Rational objective_at(const std::vector<Rational>& w, const ExecVector& x) {
  Rational v;
  for (std::size_t i = 0; i < w.size(); ++i) v += w[i] * x[i];
  return v;
}

}  // namespace

TEST_CASE("simplex basics") {
  LpProblem simple{{Rational(1)}, {row({Rational(1)}, Rational(3), "cap")}};
  LpOutcome res = lp_solve(simple);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(*res.optimum == Rational(3));
  CHECK(*res.argmax == ExecVector{Rational(3)});
  CHECK(res.binding_rows == std::vector<std::string>{"cap"});

  LpProblem free{{Rational(1)}, {}};
  CHECK(lp_solve(free).status == LpStatus::Unbounded);

  LpProblem zero{{Rational(0), Rational(0)},
                 {row({Rational(1), Rational(1)}, Rational(2))}};
  LpOutcome z = lp_solve(zero);
  REQUIRE(z.status == LpStatus::Optimal);
  CHECK(*z.optimum == Rational(0));
  CHECK(*z.argmax == ExecVector{Rational(0), Rational(0)});
}

TEST_CASE("simplex over the two-task EDF polytope") {
  Polytope edf = edf_region(two_task_edf_fixture());
  LpProblem p{{Rational(1), Rational(1)}, edf.rows};
  LpOutcome res = lp_solve(p);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(*res.optimum == Rational(5));
  CHECK(*res.argmax == ExecVector{Rational(0), Rational(5)});
}

TEST_CASE("two-phase start handles negative bounds") {
  // C_1 >= 2 written as -C_1 <= -2
  LpProblem p{{Rational(-1)}, {row({Rational(-1)}, Rational(-2), "floor"),
                               row({Rational(1)}, Rational(9), "cap")}};
  LpOutcome res = lp_solve(p);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(*res.optimum == Rational(-2));
  CHECK(*res.argmax == ExecVector{Rational(2)});
  CHECK(std::find(res.binding_rows.begin(), res.binding_rows.end(), "floor") !=
        res.binding_rows.end());

  LpProblem infeasible{{Rational(1)}, {row({Rational(0)}, Rational(-1))}};
  CHECK(lp_solve(infeasible).status == LpStatus::Infeasible);

  LpProblem conflict{{Rational(1)}, {row({Rational(-1)}, Rational(-5)),
                                     row({Rational(1)}, Rational(2))}};
  CHECK(lp_solve(conflict).status == LpStatus::Infeasible);
}

TEST_CASE("optimum equals the maximum over enumerated vertices") {
  Rng rng(1423);
  for (int iter = 0; iter < 60; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(3), DeadlineModel::Constrained, false);
    Polytope region = edf_region(ts);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < ts.size(); ++i) w.push_back(Rational(rng.range(-2, 4)));
    LpOutcome res = lp_solve({w, region.rows});
    REQUIRE(res.status == LpStatus::Optimal);
    Rational best;
    for (const ExecVector& v : vertices(region)) best = max(best, objective_at(w, v));
    CHECK(*res.optimum == best);
  }
}

TEST_CASE("redundant row elimination") {
  std::vector<ConstraintRow> dominated{row({Rational(1)}, Rational(3), "tight"),
                                       row({Rational(1)}, Rational(5), "loose")};
  CHECK(eliminate_redundant(dominated) == std::vector<std::size_t>{0});

  Polytope fig3 = edf_region(two_task_edf_fixture());
  std::vector<std::size_t> kept = eliminate_redundant(fig3.rows);
  std::vector<std::string> labels;
  for (std::size_t idx : kept) labels.push_back(fig3.rows[idx].label);
  CHECK(labels == std::vector<std::string>{"t=3", "t=15"});

  Polytope fig4 = edf_region(three_task_arbitrary_fixture());
  std::vector<std::string> labels4;
  for (std::size_t idx : eliminate_redundant(fig4.rows)) labels4.push_back(fig4.rows[idx].label);
  CHECK(labels4 == std::vector<std::string>{"t=0", "t=6", "t=13", "t=20", "t=55"});

  // unbounded probes keep their rows
  std::vector<ConstraintRow> axes{row({Rational(1), Rational(0)}, Rational(1), "x"),
                                  row({Rational(0), Rational(1)}, Rational(1), "y")};
  CHECK(eliminate_redundant(axes) == std::vector<std::size_t>{0, 1});

  // idempotence
  std::vector<ConstraintRow> kept_rows;
  for (std::size_t idx : eliminate_redundant(fig3.rows)) kept_rows.push_back(fig3.rows[idx]);
  CHECK(eliminate_redundant(kept_rows).size() == kept_rows.size());
}

TEST_CASE("EDF reward maximization") {
  TaskSet ts = two_task_edf_fixture();
  LpOutcome up = max_reward_edf(ts, {Rational(0), Rational(1)});
  REQUIRE(up.status == LpStatus::Optimal);
  CHECK(*up.optimum == Rational(5));

  LpOutcome right = max_reward_edf(ts, {Rational(1), Rational(0)});
  CHECK(*right.optimum == Rational(3));
  CHECK(std::find(right.binding_rows.begin(), right.binding_rows.end(), "t=3") !=
        right.binding_rows.end());

  LpOutcome zero = max_reward_edf(ts, {Rational(0), Rational(0)});
  CHECK(*zero.optimum == Rational(0));
  CHECK(*zero.argmax == ExecVector{Rational(0), Rational(0)});
}

TEST_CASE("EDF reward agrees with the full row system and is locally maximal") {
  Rng rng(1531);
  for (int iter = 0; iter < 40; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(3), DeadlineModel::Constrained, false);
    std::vector<Rational> w;
    bool nonzero = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      w.push_back(Rational(rng.range(-1, 3)));
      nonzero = nonzero || w.back().sign() != 0;
    }
    Polytope full = edf_region(ts);
    LpOutcome via_min = max_reward_edf(ts, w);
    LpOutcome via_full = lp_solve({w, full.rows});
    REQUIRE(via_min.status == LpStatus::Optimal);
    REQUIRE(via_full.status == LpStatus::Optimal);
    CHECK(*via_min.optimum == *via_full.optimum);
    CHECK(edf_schedulable(ts, *via_min.argmax).schedulable);

    if (nonzero) {
      ExecVector nudged = *via_min.argmax;
      for (std::size_t i = 0; i < w.size(); ++i) nudged[i] += w[i] * Rational(1, 1000);
      CHECK_FALSE(membership(full, nudged));
    }
  }
}

TEST_CASE("FP reward maximization on the two-task fixture") {
  TaskSet ts = two_task_fp_fixture();

  FpOptimum up = max_reward_fp(ts, {Rational(0), Rational(1)}, PointSource::Reduced);
  REQUIRE(up.outcome.status == LpStatus::Optimal);
  CHECK(*up.outcome.optimum == Rational(5));
  CHECK(*up.outcome.argmax == ExecVector{Rational(0), Rational(5)});
  CHECK(up.selected_points == std::vector<Rational>{3, 5});

  FpOptimum both = max_reward_fp(ts, {Rational(1), Rational(1)}, PointSource::Reduced);
  CHECK(*both.outcome.optimum == Rational(5));

  FpOptimum right = max_reward_fp(ts, {Rational(1), Rational(0)}, PointSource::Reduced);
  CHECK(*right.outcome.optimum == Rational(3));
  CHECK(std::find(right.outcome.binding_rows.begin(), right.outcome.binding_rows.end(),
                  "task=1 t=3") != right.outcome.binding_rows.end());
}

TEST_CASE("FP reward dominates any fixed selection and lands in the region") {
  Rng rng(1637);
  for (int iter = 0; iter < 30; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(3), DeadlineModel::Constrained, true);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < ts.size(); ++i) w.push_back(Rational(rng.range(0, 3)));
    FpOptimum opt = max_reward_fp(ts, w, PointSource::Reduced);
    REQUIRE(opt.outcome.status == LpStatus::Optimal);
    CHECK(fp_schedulable(ts, *opt.outcome.argmax, PointSource::Reduced).schedulable);

    AndOrRegion region = fp_region(ts, PointSource::Reduced);
    LpProblem first;
    first.objective = w;
    for (const auto& group : region.groups) first.rows.push_back(group.front());
    LpOutcome fixed = lp_solve(first);
    REQUIRE(fixed.status == LpStatus::Optimal);
    CHECK(*opt.outcome.optimum >= *fixed.optimum);
  }
}
