#include "doctest.h"

#include "rtct/fp.hpp"

#include "support.hpp"

#include <stdexcept>

using namespace rtct;
using namespace testsupport;

TEST_CASE("workload rows") {
  TaskSet ts = two_task_fp_fixture();

  FpConstraint at5 = k_vector(ts, 1, Rational(5));
  CHECK(at5.coeffs == std::vector<Rational>{Rational(2), Rational(1)});
  CHECK(at5.bound == Rational(5));

  FpConstraint at4 = k_vector(ts, 1, Rational(4));
  CHECK(at4.coeffs == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(at4.bound == Rational(4));

  FpConstraint top = k_vector(ts, 0, Rational(7, 2));
  CHECK(top.coeffs == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(top.bound == Rational(7, 2));

  FpConstraint job2 = k_vector(ts, 1, Rational(5), 2);
  CHECK(job2.coeffs == std::vector<Rational>{Rational(2), Rational(3)});
  CHECK(job2.job == 2);

  CHECK_THROWS_AS(k_vector(ts, 2, Rational(1)), std::invalid_argument);
}

TEST_CASE("release-instant point sets") {
  TaskSet ts = staircase_points_fixture();
  SchedPointSet s3 = lehoczky_points(ts, 2);
  CHECK(s3.points == std::vector<Rational>{0, 3, 6, 8, 9, 12, 15, 16, 18, 19});
  CHECK(s3.points.size() == 10);

  // highest-priority task: nothing above it contributes release instants
  CHECK(lehoczky_points(ts, 0).points == std::vector<Rational>{3});

  TaskSet two = two_task_fp_fixture();
  CHECK(lehoczky_points(two, 1).points == std::vector<Rational>{0, 4, 5});
}

TEST_CASE("floor-projection point sets") {
  TaskSet ts = staircase_points_fixture();
  CHECK(reduced_points(ts, 2, Rational(19)).points == std::vector<Rational>{15, 16, 18, 19});

  TaskSet two = two_task_fp_fixture();
  CHECK(reduced_points(two, 1, Rational(5)).points == std::vector<Rational>{4, 5});

  CHECK(reduced_points(two, 0, Rational(3)).points == std::vector<Rational>{3});

  TaskSet not_dm({Task{Rational(4), Rational(4), std::nullopt},
                  Task{Rational(5), Rational(3), std::nullopt}},
                 DeadlineModel::Constrained);
  CHECK_THROWS_AS(reduced_points(not_dm, 1, Rational(3)), std::domain_error);
}

TEST_CASE("reduced points are release instants or the deadline, and few") {
  Rng rng(101);
  for (int iter = 0; iter < 120; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(4), DeadlineModel::Constrained, true);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      SchedPointSet reduced = reduced_points(ts, i, ts[i].deadline);
      CHECK(reduced.points.size() <= (std::size_t{1} << i));
      REQUIRE(!reduced.points.empty());
      CHECK(reduced.points.back() == ts[i].deadline);
      for (const Rational& p : reduced.points) {
        bool explained = p == ts[i].deadline;
        for (std::size_t l = 0; l < i && !explained; ++l)
          explained = (p / ts[l].period).is_integer();
        CHECK(explained);
      }
    }
  }
}

TEST_CASE("fixed-priority schedulability on the two-task fixture") {
  TaskSet ts = two_task_fp_fixture();

  FpVerdict good = fp_schedulable(ts, rat_vec({1, 3}), PointSource::Reduced);
  CHECK(good.schedulable);
  CHECK(good.witness[1] == Rational(4));

  FpVerdict bad = fp_schedulable(ts, rat_vec({Rational(5, 2), 2}), PointSource::Reduced);
  CHECK_FALSE(bad.schedulable);
  CHECK(bad.failing_task == 1);

  CHECK(fp_schedulable(ts, rat_vec({0, 0}), PointSource::Lehoczky).schedulable);

  TaskSet arb({Task{Rational(2), Rational(3), std::nullopt}}, DeadlineModel::Arbitrary);
  CHECK_THROWS_AS(fp_schedulable(arb, rat_vec({1}), PointSource::Lehoczky), std::domain_error);
}

TEST_CASE("point sources agree on DM-ordered task sets") {
  Rng rng(211);
  for (int iter = 0; iter < 200; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(4), DeadlineModel::Constrained, true);
    ExecVector c = random_exec(rng, ts);
    FpVerdict a = fp_schedulable(ts, c, PointSource::Lehoczky);
    FpVerdict b = fp_schedulable(ts, c, PointSource::Reduced);
    CHECK(a.schedulable == b.schedulable);
  }
}

TEST_CASE("schedulability is monotone in execution times") {
  Rng rng(307);
  int shrunk = 0;
  for (int iter = 0; iter < 250 || shrunk < 40; ++iter) {
    REQUIRE(iter < 2000);
    TaskSet ts = random_taskset(rng, 1 + rng.below(3), DeadlineModel::Constrained, false);
    ExecVector c = random_exec(rng, ts);
    if (!fp_schedulable(ts, c, PointSource::Lehoczky).schedulable) continue;
    ExecVector smaller = c;
    for (Rational& v : smaller) v *= Rational(rng.range(0, 4), 4);
    CHECK(fp_schedulable(ts, smaller, PointSource::Lehoczky).schedulable);
    ++shrunk;
  }
}

TEST_CASE("arbitrary-deadline test") {
  TaskSet ts = three_task_arbitrary_fixture();

  ExecVector c = rat_vec({Rational(1, 2), 1, 1});
  FpArbitraryVerdict v = fp_schedulable_arbitrary(ts, c);
  SimOptions opt;
  opt.stop_on_first_miss = true;
  Trace tr = simulate(ts, c, Policy::FixedPriority, default_horizon(ts, Policy::FixedPriority), opt);
  CHECK(v.schedulable == !tr.first_miss.has_value());

  FpArbitraryVerdict zero = fp_schedulable_arbitrary(ts, rat_vec({0, 0, 0}));
  CHECK(zero.schedulable);
  CHECK(zero.lastbusy == std::vector<long>{0, 0, 0});

  // total utilization above one is rejected outright
  FpArbitraryVerdict over = fp_schedulable_arbitrary(ts, rat_vec({2, 1, 1}));
  CHECK_FALSE(over.schedulable);
}

TEST_CASE("arbitrary-deadline test reduces to the constrained one") {
  Rng rng(401);
  for (int iter = 0; iter < 150; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(3), DeadlineModel::Constrained, rng.chance(2));
    ExecVector c = random_exec(rng, ts);
    if (total_utilization(ts, c) > Rational(1)) continue;
    FpVerdict constrained = fp_schedulable(ts, c, PointSource::Lehoczky);
    FpArbitraryVerdict arb = fp_schedulable_arbitrary(ts, c);
    CHECK(constrained.schedulable == arb.schedulable);
  }
}

TEST_CASE("floor-projection route of the arbitrary test is sound but not exact") {
  // The projected points are a subset of the release points, so a verdict of
  // schedulable from the reduced route always holds under the exact one.
  Rng rng(503);
  for (int iter = 0; iter < 200; ++iter) {
    TaskSet ts = random_taskset(rng, 1 + rng.below(4), DeadlineModel::Arbitrary, true);
    ExecVector c = random_exec(rng, ts);
    if (total_utilization(ts, c) > Rational(1)) continue;
    FpArbitraryVerdict reduced = fp_schedulable_arbitrary_with(ts, c, PointSource::Reduced);
    if (reduced.schedulable)
      CHECK(fp_schedulable_arbitrary_with(ts, c, PointSource::Lehoczky).schedulable);
  }

  // The converse fails: on this DM-ordered set the only certifying instant
  // for task 4, job 2 is the release point 35, which the projection from
  // the deadline 40 never reaches. The exact test and the simulator accept.
  TaskSet ts({Task{Rational(3), Rational(9, 4), std::nullopt},
              Task{Rational(12), Rational(9), std::nullopt},
              Task{Rational(5), Rational(10), std::nullopt},
              Task{Rational(10), Rational(20), std::nullopt}},
             DeadlineModel::Arbitrary);
  ExecVector c = rat_vec({Rational(6, 7), Rational(12, 7), Rational(15, 7), Rational(10, 7)});
  CHECK(total_utilization(ts, c) == Rational(1));

  FpArbitraryVerdict exact = fp_schedulable_arbitrary(ts, c);
  CHECK(exact.schedulable);
  CHECK(sim_fp_schedulable(ts, c));

  FpArbitraryVerdict projected = fp_schedulable_arbitrary_with(ts, c, PointSource::Reduced);
  CHECK_FALSE(projected.schedulable);
  REQUIRE(projected.failure.has_value());
  CHECK(projected.failure->task == 3);
  CHECK(projected.failure->job == 2);
}

TEST_CASE("constraint-region construction") {
  TaskSet ts = two_task_fp_fixture();
  AndOrRegion region = fp_region(ts, PointSource::Reduced);
  REQUIRE(region.groups.size() == 2);
  REQUIRE(region.groups[0].size() == 1);
  CHECK(region.groups[0][0].coeffs == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(region.groups[0][0].bound == Rational(3));
  REQUIRE(region.groups[1].size() == 2);
  CHECK(region.groups[1][0].coeffs == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(region.groups[1][0].bound == Rational(4));
  CHECK(region.groups[1][1].coeffs == std::vector<Rational>{Rational(2), Rational(1)});
  CHECK(region.groups[1][1].bound == Rational(5));

  TaskSet solo({Task{Rational(9), Rational(7), std::nullopt}}, DeadlineModel::Constrained);
  AndOrRegion single = fp_region(solo, PointSource::Lehoczky);
  REQUIRE(single.groups.size() == 1);
  REQUIRE(single.groups[0].size() == 1);
  CHECK(single.groups[0][0].bound == Rational(7));

  TaskSet fig1 = staircase_points_fixture();
  AndOrRegion tall = fp_region(fig1, PointSource::Reduced);
  REQUIRE(tall.groups.size() == 3);
  std::vector<Rational> pts;
  for (const ConstraintRow& row : tall.groups[2]) pts.push_back(row.bound);
  CHECK(pts == std::vector<Rational>{15, 16, 18, 19});
}
