#ifndef qdc_tests_test_support_hpp
#define qdc_tests_test_support_hpp

#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace qdc::testing {

/// Exponential workload drawn with the standard library distributions, so
/// tests do not depend on the library's own sampler.
inline WorkloadTable random_workload(std::mt19937_64& gen, std::size_t n,
                                     double lambda, double mu,
                                     bool shuffle = false) {
  std::exponential_distribution<double> inter(lambda);
  std::exponential_distribution<double> service(mu);
  std::vector<double> a(n);
  std::vector<double> s(n);
  double t = 0.0;
  for (std::size_t i = 0; i != n; ++i) {
    t += inter(gen);
    a[i] = t;
    s[i] = service(gen);
  }
  if (shuffle) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> a2(n);
    std::vector<double> s2(n);
    for (std::size_t i = 0; i != n; ++i) {
      a2[i] = a[perm[i]];
      s2[i] = s[perm[i]];
    }
    a.swap(a2);
    s.swap(s2);
  }
  return WorkloadTable(std::move(a), std::move(s));
}

/// Small-integer times: lots of simultaneous arrivals and exact ties.
inline WorkloadTable integer_workload(std::mt19937_64& gen, std::size_t n,
                                      int max_arrival, int max_service) {
  std::uniform_int_distribution<int> arrival(0, max_arrival);
  std::uniform_int_distribution<int> service(0, max_service);
  std::vector<double> a(n);
  std::vector<double> s(n);
  for (std::size_t i = 0; i != n; ++i) {
    a[i] = arrival(gen);
    s[i] = service(gen);
  }
  return WorkloadTable(std::move(a), std::move(s));
}

/// Random step function in the style of a staffing roster: knots spaced at
/// least `min_gap` apart and counts in [lo, hi].
inline ServerStepFunction random_roster(std::mt19937_64& gen, std::size_t knots,
                                        double first, double min_gap,
                                        std::uint32_t lo, std::uint32_t hi) {
  std::uniform_real_distribution<double> extra(0.0, min_gap);
  std::uniform_int_distribution<std::uint32_t> count(lo, hi);
  std::vector<double> x;
  double t = first;
  for (std::size_t l = 0; l != knots; ++l) {
    x.push_back(t);
    t += min_gap + extra(gen);
  }
  std::vector<std::uint32_t> y(knots + 1);
  for (auto& c : y) {
    c = count(gen);
  }
  if (*std::max_element(y.begin(), y.end()) == 0) {
    y.back() = 1;
  }
  return ServerStepFunction(std::move(x), std::move(y));
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

template <typename T>
inline std::vector<T> sorted_copy(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Rows in stable arrival order.
inline std::vector<std::size_t> arrival_rank(std::vector<double> const& a) {
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return a[l] < a[r]; });
  return order;
}

/// First violated engine invariant, empty when all hold: no early start,
/// per-server non-overlap, FCFS start order, and missed <=> no server.
inline std::string invariant_violation(QueueResult const& r,
                                       double tol = 1e-9) {
  for (std::size_t i = 0; i != r.size(); ++i) {
    bool const missed = r.departures[i] == infinity;
    if (missed != (r.assignments[i] == no_server)) {
      return "row " + std::to_string(i) + ": missed marker mismatch";
    }
    if (!missed && r.departures[i] - r.services[i] < r.arrivals[i] - tol) {
      return "row " + std::to_string(i) + ": starts before arrival";
    }
  }
  // Per-server intervals [d - s, d), checked after sorting by start and then
  // end, so a zero-length service sharing its start with a longer one sorts
  // first.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i != r.size(); ++i) {
    if (r.served(i)) {
      rows.push_back(i);
    }
  }
  auto start = [&](std::size_t i) { return r.departures[i] - r.services[i]; };
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t l, std::size_t q) {
    return r.assignments[l] != r.assignments[q]
               ? r.assignments[l] < r.assignments[q]
               : start(l) != start(q) ? start(l) < start(q)
                                      : r.departures[l] < r.departures[q];
  });
  for (std::size_t j = 1; j < rows.size(); ++j) {
    auto p = rows[j - 1];
    auto q = rows[j];
    if (r.assignments[p] == r.assignments[q] &&
        start(q) < r.departures[p] - tol) {
      return "server " + std::to_string(r.assignments[q]) +
             ": overlapping service intervals";
    }
  }
  // Served customers start in arrival order.
  auto order = arrival_rank(r.arrivals);
  double last = -infinity;
  for (auto i : order) {
    if (!r.served(i)) {
      continue;
    }
    if (start(i) < last - tol) {
      return "row " + std::to_string(i) + ": starts before an earlier arrival";
    }
    last = std::max(last, start(i));
  }
  return {};
}

/// Largest number of customers in service at once. Start times are
/// recovered as d - s, which can land an ulp before the previous departure on
/// the same server, so every interval is shortened by `tol` at its end.
inline std::size_t max_in_service(QueueResult const& r, double tol = 1e-9) {
  std::vector<std::pair<double, int>> events;
  for (std::size_t i = 0; i != r.size(); ++i) {
    double const lo = r.service_start(i);
    double const hi = r.departures[i] - tol;
    if (r.served(i) && hi > lo) {
      events.emplace_back(lo, +1);
      events.emplace_back(hi, -1);
    }
  }
  // Ends sort before starts at equal times.
  std::sort(events.begin(), events.end());
  std::size_t now = 0;
  std::size_t most = 0;
  for (auto const& e : events) {
    now = static_cast<std::size_t>(static_cast<long>(now) + e.second);
    most = std::max(most, now);
  }
  return most;
}

/// First customer that starts on a server which is closed both at its start
/// and just after it, empty when none does. The start is recovered as d - s
/// and may sit a few ulps before an opening knot, hence the small look-ahead.
inline std::string closed_server_start(QueueResult const& r,
                                       ServerSchedule const& schedule) {
  auto const list =
      std::holds_alternative<ServerAvailabilityList>(schedule)
          ? std::get<ServerAvailabilityList>(schedule)
      : std::holds_alternative<ServerStepFunction>(schedule)
          ? counts_to_server_list(std::get<ServerStepFunction>(schedule))
          : ServerAvailabilityList(std::vector<ServerAvailability>(
                std::get<FixedServers>(schedule).count, {{}, {1}}));
  auto open_at = [](ServerAvailability const& s, double t) {
    auto e = std::lower_bound(s.knots.begin(), s.knots.end(), t) -
             s.knots.begin();
    return s.open[static_cast<std::size_t>(e)] == 1;
  };
  for (std::size_t i = 0; i != r.size(); ++i) {
    if (!r.served(i)) {
      continue;
    }
    if (r.assignments[i] > list.size()) {
      return "row " + std::to_string(i) + ": server index out of range";
    }
    auto const& server = list[r.assignments[i] - 1];
    double const t = r.service_start(i);
    double const ahead = t + 1e-9 * std::max(1.0, std::fabs(t));
    if (!open_at(server, t) && !open_at(server, ahead)) {
      return "row " + std::to_string(i) + ": starts on a closed server";
    }
  }
  return {};
}

} // namespace qdc::testing

#endif // qdc_tests_test_support_hpp
