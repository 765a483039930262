#include <qdc/core.hpp>

#include <qdc/error.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

namespace qdc {

namespace {

// Visiting order: arrival time ascending, equal arrivals keep input order.
// Empty when the input is already sorted so callers can skip the indirection.
std::vector<std::size_t> arrival_order(std::span<double const> arrivals) {
  if (std::is_sorted(arrivals.begin(), arrivals.end())) {
    return {};
  }
  std::vector<std::size_t> order(arrivals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [arrivals](std::size_t lhs, std::size_t rhs) {
                     return arrivals[lhs] < arrivals[rhs];
                   });
  return order;
}

QueueResult make_result(WorkloadTable const& workload) {
  QueueResult r;
  r.arrivals.assign(workload.arrivals().begin(), workload.arrivals().end());
  r.services.assign(workload.services().begin(), workload.services().end());
  r.departures.resize(workload.size());
  r.assignments.resize(workload.size());
  return r;
}

// Calls visit(row) for every row in arrival order.
template <typename Visit>
void for_each_in_arrival_order(WorkloadTable const& workload, Visit&& visit) {
  auto const order = arrival_order(workload.arrivals());
  std::size_t const n = workload.size();
  if (order.empty()) {
    for (std::size_t i = 0; i != n; ++i) {
      visit(i);
    }
  } else {
    for (std::size_t i = 0; i != n; ++i) {
      visit(order[i]);
    }
  }
}

// Server that frees up first, lowest index on ties. An idle server that has
// waited longest is therefore preferred over one released more recently.
std::size_t first_free(std::vector<double> const& free_at) {
  return static_cast<std::size_t>(
      std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
}

// When a server with the given availability could take a customer no earlier
// than t, and since when it has been continuously open at that moment. A
// server that reopens after t is "open since" its reopening.
struct opening {
  double start;
  double since;
};

opening open_from(double t, ServerAvailability const& server) {
  auto const& knots = server.knots;
  auto const& open = server.open;
  auto e = static_cast<std::size_t>(
      std::lower_bound(knots.begin(), knots.end(), t) - knots.begin());
  if (open[e]) {
    while (e > 0 && open[e - 1]) {
      --e;
    }
    return {t, e == 0 ? 0.0 : knots[e - 1]};
  }
  for (++e; e < open.size(); ++e) {
    if (open[e]) {
      return {knots[e - 1], knots[e - 1]};
    }
  }
  return {infinity, infinity};
}

} // namespace

QueueResult lindley_departures(WorkloadTable const& workload) {
  auto result = make_result(workload);
  auto const a = workload.arrivals();
  auto const s = workload.services();
  double previous = 0.0;
  for_each_in_arrival_order(workload, [&](std::size_t i) {
    previous = std::max(a[i], previous) + s[i];
    result.departures[i] = previous;
    result.assignments[i] = 1;
  });
  return result;
}

QueueResult qdc_fixed(WorkloadTable const& workload, std::uint32_t servers) {
  if (servers < 1) {
    throw invalid_input_error("server count must be at least 1");
  }
  if (servers <= detail::linear_scan_limit) {
    return detail::qdc_fixed_linear(workload, servers);
  }
  return detail::qdc_fixed_heap(workload, servers);
}

QueueResult detail::qdc_fixed_linear(WorkloadTable const& workload,
                                     std::uint32_t servers) {
  auto result = make_result(workload);
  auto const a = workload.arrivals();
  auto const s = workload.services();
  std::vector<double> free_at(servers, 0.0);
  for_each_in_arrival_order(workload, [&](std::size_t i) {
    auto const k = first_free(free_at);
    free_at[k] = std::max(a[i], free_at[k]) + s[i];
    result.departures[i] = free_at[k];
    result.assignments[i] = static_cast<server_id>(k + 1);
  });
  return result;
}

QueueResult detail::qdc_fixed_heap(WorkloadTable const& workload,
                                   std::uint32_t servers) {
  auto result = make_result(workload);
  auto const a = workload.arrivals();
  auto const s = workload.services();

  using entry = std::pair<double, std::uint32_t>;
  std::vector<entry> heap(servers);
  for (std::uint32_t k = 0; k != servers; ++k) {
    heap[k] = {0.0, k};
  }
  // Ascending (free time, index) is already a valid min-heap.
  std::priority_queue<entry, std::vector<entry>, std::greater<>> free_at(
      std::greater<>{}, std::move(heap));

  for_each_in_arrival_order(workload, [&](std::size_t i) {
    auto const [free, k] = free_at.top();
    free_at.pop();
    double const done = std::max(a[i], free) + s[i];
    free_at.emplace(done, k);
    result.departures[i] = done;
    result.assignments[i] = k + 1;
  });
  return result;
}

QueueResult qdc_stepfun(WorkloadTable const& workload,
                        ServerStepFunction const& schedule) {
  if (!check_condition(workload.services(), schedule)) {
    throw condition_violated_error(
        "a service time spans a whole epoch of the step-function schedule "
        "(longest allowed is " +
        std::to_string(schedule.min_interior_width()) +
        "); use a per-server \"list\" schedule instead");
  }
  auto result = make_result(workload);
  auto const a = workload.arrivals();
  auto const s = workload.services();
  auto const knots = schedule.knots();
  auto const counts = schedule.counts();

  std::vector<double> free_at(schedule.max_count(), infinity);
  std::fill_n(free_at.begin(), counts[0], 0.0);
  std::size_t epoch = 0;

  for_each_in_arrival_order(workload, [&](std::size_t i) {
    // Move to the epoch in which this customer can start: the arrival lies
    // beyond the next knot, or every server is occupied (or closed) until
    // at least that knot.
    while (epoch < knots.size()) {
      double const knot = knots[epoch];
      double const soonest = *std::min_element(free_at.begin(), free_at.end());
      if (a[i] < knot && soonest < knot) {
        break;
      }
      std::uint32_t const from = counts[epoch];
      std::uint32_t const to = counts[epoch + 1];
      for (std::uint32_t k = from; k < to; ++k) {
        free_at[k] = knot;
      }
      for (std::uint32_t k = to; k < from; ++k) {
        free_at[k] = infinity;
      }
      ++epoch;
    }

    auto const k = first_free(free_at);
    double const start = std::max(a[i], free_at[k]);
    if (start == infinity) {
      result.departures[i] = infinity;
      result.assignments[i] = no_server;
      return;
    }
    free_at[k] = start + s[i];
    result.departures[i] = free_at[k];
    result.assignments[i] = static_cast<server_id>(k + 1);
  });
  return result;
}

QueueResult qdc_server_list(WorkloadTable const& workload,
                            ServerAvailabilityList const& schedule) {
  auto result = make_result(workload);
  auto const a = workload.arrivals();
  auto const s = workload.services();
  std::size_t const servers = schedule.size();
  std::vector<double> free_at(servers, 0.0);

  for_each_in_arrival_order(workload, [&](std::size_t i) {
    // Earliest start first; among equal starts the server that has been
    // free longest, then the lowest index.
    std::size_t best = 0;
    opening best_open{infinity, infinity};
    double best_key = infinity;
    for (std::size_t k = 0; k != servers; ++k) {
      auto const o = open_from(std::max(free_at[k], a[i]), schedule[k]);
      double const key = std::max(free_at[k], o.since);
      if (o.start < best_open.start ||
          (o.start == best_open.start && key < best_key)) {
        best = k;
        best_open = o;
        best_key = key;
      }
    }
    if (best_open.start == infinity) {
      result.departures[i] = infinity;
      result.assignments[i] = no_server;
      return;
    }
    free_at[best] = best_open.start + s[i];
    result.departures[i] = free_at[best];
    result.assignments[i] = static_cast<server_id>(best + 1);
  });
  return result;
}

QueueResult run_queue(WorkloadTable const& workload,
                      ServerSchedule const& schedule) {
  struct visitor {
    WorkloadTable const& w;
    QueueResult operator()(FixedServers const& f) const {
      return qdc_fixed(w, f.count);
    }
    QueueResult operator()(ServerStepFunction const& sf) const {
      return qdc_stepfun(w, sf);
    }
    QueueResult operator()(ServerAvailabilityList const& l) const {
      return qdc_server_list(w, l);
    }
  };
  return std::visit(visitor{workload}, schedule);
}

} // namespace qdc
