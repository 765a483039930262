#include <qdc/core.hpp>
#include <qdc/error.hpp>
#include <qdc/metrics.hpp>

#include "test_support.hpp"

#include <doctest.h>

using namespace qdc;

namespace {

// Midpoint-rule integral of the number of customers with lo(i) <= t < hi(i),
// counted directly at each grid point.
template <typename Lo, typename Hi>
double grid_integral(QueueResult const& r, Lo lo, Hi hi, double horizon,
                     std::size_t cells) {
  double const h = horizon / static_cast<double>(cells);
  double total = 0.0;
  for (std::size_t c = 0; c != cells; ++c) {
    double const t = (static_cast<double>(c) + 0.5) * h;
    int count = 0;
    for (std::size_t i = 0; i != r.size(); ++i) {
      if (r.served(i) && lo(i) <= t && t < hi(i)) {
        ++count;
      }
    }
    total += count * h;
  }
  return total;
}

QueueResult fixed_run(std::vector<double> a, std::vector<double> s,
                      std::uint32_t k) {
  return qdc_fixed(WorkloadTable(std::move(a), std::move(s)), k);
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("waiting_times") {
  auto r = fixed_run({0.7551818, 1.9368246, 2.0825313},
                     {2.6669670, 1.2434810, 0.4197332}, 2);
  auto w = waiting_times(r);
  CHECK(std::fabs(w[0]) <= 1e-12);
  CHECK(std::fabs(w[1]) <= 1e-12);
  CHECK(std::fabs(w[2] - 1.097774) <= 1e-6);

  w = waiting_times(fixed_run({0, 0}, {5, 1}, 1));
  CHECK(w == std::vector<double>{0, 5});

  w = waiting_times(fixed_run({0, 1, 2}, {3, 3, 3}, 3));
  CHECK(w == std::vector<double>{0, 0, 0});

  auto missed = qdc_stepfun(WorkloadTable({0, 0}, {12, 1}),
                            ServerStepFunction({10}, {1, 0}));
  CHECK(waiting_times(missed)[1] == infinity);
}

TEST_CASE("system_trajectory by hand") {
  auto traj = system_trajectory(fixed_run({0, 1}, {3, 1}, 2));
  CHECK(traj.times == std::vector<double>{0, 1, 2, 3});
  CHECK(traj.levels == std::vector<std::int64_t>{1, 2, 1, 0});
  CHECK(traj.level_at(-1) == 0);
  CHECK(traj.level_at(0.5) == 1);
  CHECK(traj.level_at(1) == 2);
  CHECK(traj.level_at(2.5) == 1);
  CHECK(traj.level_at(10) == 0);
  CHECK(traj.integral(3) == 4);
  CHECK(traj.integral(1.5) == 2);

  CHECK(system_trajectory(fixed_run({}, {}, 1)).empty());
}

TEST_CASE("simultaneous events are netted") {
  // One customer leaves exactly when the next arrives.
  auto traj = system_trajectory(fixed_run({0, 2}, {2, 2}, 1));
  CHECK(traj.times == std::vector<double>{0, 4});
  CHECK(traj.levels == std::vector<std::int64_t>{1, 0});
}

TEST_CASE("queue_trajectory") {
  auto traj = queue_trajectory(fixed_run({0, 0}, {5, 1}, 1));
  CHECK(traj.times == std::vector<double>{0, 5});
  CHECK(traj.levels == std::vector<std::int64_t>{1, 0});

  std::mt19937_64 gen(3);
  auto w = testing::random_workload(gen, 30, 1.0, 1.0);
  CHECK(queue_trajectory(qdc_fixed(w, 30)).empty());
}

TEST_CASE("system level is queue level plus busy level") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial != 50; ++trial) {
    auto w = testing::random_workload(gen, 40, 1.0, 0.6, true);
    auto r = qdc_fixed(w, 2);
    auto sys = system_trajectory(r);
    auto que = queue_trajectory(r);
    auto busy = busy_trajectory(r);
    // Per-server interval occupancy, counted directly.
    auto in_service = [&](double t) {
      std::int64_t n = 0;
      for (std::size_t i = 0; i != r.size(); ++i) {
        n += r.service_start(i) <= t && t < r.departures[i];
      }
      return n;
    };
    for (double t : sys.times) {
      REQUIRE(sys.level_at(t) == que.level_at(t) + busy.level_at(t));
      REQUIRE(busy.level_at(t) == in_service(t));
      REQUIRE(busy.level_at(t) <= 2);
    }
    REQUIRE(sys.levels.back() == 0);
    for (auto level : sys.levels) {
      REQUIRE(level >= 0);
    }
  }
}

TEST_CASE("trajectory integrals against a fine grid") {
  std::mt19937_64 gen(5);
  auto w = testing::random_workload(gen, 100, 1.0, 0.6);
  auto r = qdc_fixed(w, 2);
  double const horizon =
      *std::max_element(r.departures.begin(), r.departures.end());

  double response = 0.0;
  for (std::size_t i = 0; i != r.size(); ++i) {
    response += r.departures[i] - r.arrivals[i];
  }
  double const exact = system_trajectory(r).integral(horizon);
  CHECK(exact == doctest::Approx(response).epsilon(1e-12));

  std::size_t const cells = 200000;
  double const h = horizon / cells;
  double const grid = grid_integral(
      r, [&](std::size_t i) { return r.arrivals[i]; },
      [&](std::size_t i) { return r.departures[i]; }, horizon, cells);
  // Each of the 2n jumps can misplace at most one cell of width h.
  CHECK(std::fabs(grid - exact) <= 2.0 * r.size() * h);

  double const queued = grid_integral(
      r, [&](std::size_t i) { return r.arrivals[i]; },
      [&](std::size_t i) { return r.service_start(i); }, horizon, cells);
  CHECK(std::fabs(queued - queue_trajectory(r).integral(horizon)) <=
        2.0 * r.size() * h);
}

TEST_CASE("summarize small cases") {
  auto stats = summarize(fixed_run({0, 0}, {2, 2}, 2), FixedServers(2));
  CHECK(stats.total_customers == 2);
  CHECK(stats.missed_customers == 0);
  CHECK(stats.horizon == 2);
  CHECK(stats.utilization_factor == 1.0);
  CHECK(stats.mean_waiting == 0.0);
  CHECK(stats.mean_in_system == 2.0);
  CHECK(stats.mean_queue_length == 0.0);

  stats = summarize(fixed_run({1}, {2}, 1), FixedServers(1));
  CHECK(stats.horizon == 3);
  CHECK(stats.utilization_factor == doctest::Approx(2.0 / 3.0));
  CHECK(stats.mean_response == 2.0);

  stats = summarize(fixed_run({0, 0}, {5, 1}, 1), FixedServers(1));
  CHECK(stats.mean_waiting == 2.5);
  CHECK(stats.mean_response == 5.5);
  CHECK(stats.mean_queue_length == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("summarize clamps rounding negatives and skips missed customers") {
  QueueResult r;
  r.arrivals = {0.1, 0.2};
  r.services = {0.3, 1.0};
  r.departures = {std::nextafter(0.1 + 0.3, 0.0), infinity};
  r.assignments = {1, no_server};
  REQUIRE(waiting_times(r)[0] < 0.0);
  auto stats = summarize(r, FixedServers(1));
  CHECK(stats.mean_waiting == 0.0);
  CHECK(stats.missed_customers == 1);
  CHECK(stats.total_customers == 2);
}

TEST_CASE("no-wait customers have exactly zero wait in summaries") {
  // (a + s) - s can round above a; the summary must still report 0.
  std::mt19937_64 gen(9);
  auto w = testing::random_workload(gen, 500, 1.0, 1.0);
  auto r = qdc_fixed(w, 500);
  CHECK(summarize(r, FixedServers(500)).mean_waiting == 0.0);
  CHECK(summarize(r, FixedServers(500)).mean_queue_length == 0.0);
}

TEST_CASE("summarize under a time-varying schedule") {
  // Two servers on (0, 10], one after; a single customer serves from 0 to 12.
  ServerStepFunction sf({10}, {2, 1});
  auto r = qdc_stepfun(WorkloadTable({0}, {12}), sf);
  auto stats = summarize(r, sf);
  CHECK(stats.horizon == 12);
  CHECK(stats.utilization_factor == doctest::Approx(12.0 / 22.0));
}

TEST_CASE("summarize rejects degenerate windows") {
  auto missed = qdc_stepfun(WorkloadTable({20}, {1}),
                            ServerStepFunction({10}, {1, 0}));
  CHECK_THROWS_AS(summarize(missed, ServerStepFunction({10}, {1, 0})),
                  degenerate_window_error);
  CHECK_THROWS_AS(summarize(fixed_run({}, {}, 1), FixedServers(1)),
                  degenerate_window_error);
  CHECK_THROWS_AS(summarize(fixed_run({0}, {0}, 1), FixedServers(1)),
                  degenerate_window_error);
}

TEST_CASE("summary invariants on random workloads") {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial != 200; ++trial) {
    std::uint32_t const k = 1 + trial % 4;
    auto w = testing::random_workload(gen, 200, 1.0, 1.3 / k, trial % 2 == 0);
    auto r = qdc_fixed(w, k);
    auto s = summarize(r, FixedServers(k));
    REQUIRE(s.mean_response >= s.mean_waiting);
    REQUIRE(s.mean_waiting >= 0.0);
    REQUIRE(s.mean_in_system >= s.mean_queue_length);
    REQUIRE(s.mean_queue_length >= 0.0);

    double response = 0.0;
    double work = 0.0;
    for (std::size_t i = 0; i != r.size(); ++i) {
      response += r.departures[i] - r.arrivals[i];
      work += r.services[i];
    }
    // Little's law over the whole window, and the busy-server identity.
    REQUIRE(s.mean_in_system ==
            doctest::Approx(response / s.horizon).epsilon(1e-10));
    REQUIRE(s.mean_in_system - s.mean_queue_length ==
            doctest::Approx(work / s.horizon).epsilon(1e-9));
    REQUIRE(s.utilization_factor ==
            doctest::Approx(work / (k * s.horizon)).epsilon(1e-12));
  }
}

TEST_CASE("ecdf") {
  auto e = ecdf({3, 1, 2, 2, infinity});
  CHECK(e.values == std::vector<double>{1, 2, 3});
  CHECK(e.fractions == std::vector<double>{0.25, 0.75, 1.0});
  CHECK(ecdf({}).values.empty());
}

} // TEST_SUITE
