#include <qdc/metrics.hpp>

#include <qdc/error.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace qdc {

namespace {

using event = std::pair<double, std::int64_t>;

StepTrajectory accumulate(std::vector<event> events) {
  std::sort(events.begin(), events.end(),
            [](event const& l, event const& r) { return l.first < r.first; });
  StepTrajectory traj;
  std::int64_t level = 0;
  for (std::size_t j = 0; j != events.size();) {
    double const t = events[j].first;
    std::int64_t net = 0;
    for (; j != events.size() && events[j].first == t; ++j) {
      net += events[j].second;
    }
    if (net != 0) {
      level += net;
      traj.times.push_back(t);
      traj.levels.push_back(level);
    }
  }
  return traj;
}

// Intervals [from(i), to(i)) over served customers; empty intervals vanish.
template <typename From, typename To>
StepTrajectory interval_count(QueueResult const& r, From from, To to) {
  std::vector<event> events;
  events.reserve(2 * r.size());
  for (std::size_t i = 0; i != r.size(); ++i) {
    if (!r.served(i)) {
      continue;
    }
    double lo = from(i);
    double hi = to(i);
    if (hi > lo) {
      events.emplace_back(lo, +1);
      events.emplace_back(hi, -1);
    }
  }
  return accumulate(std::move(events));
}

} // namespace

double StepTrajectory::integral(double horizon) const noexcept {
  double total = 0.0;
  for (std::size_t j = 0; j != times.size(); ++j) {
    double lo = times[j];
    double hi = j + 1 < times.size() ? times[j + 1] : infinity;
    if (lo >= horizon) {
      break;
    }
    total += static_cast<double>(levels[j]) * (std::min(hi, horizon) - lo);
  }
  return total;
}

std::int64_t StepTrajectory::level_at(double t) const noexcept {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) {
    return 0;
  }
  return levels[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::vector<double> waiting_times(QueueResult const& result) {
  std::vector<double> w(result.size());
  for (std::size_t i = 0; i != w.size(); ++i) {
    w[i] = result.served(i) ? result.departures[i] - result.arrivals[i] -
                                  result.services[i]
                            : infinity;
  }
  return w;
}

StepTrajectory system_trajectory(QueueResult const& result) {
  return interval_count(
      result, [&](std::size_t i) { return result.arrivals[i]; },
      [&](std::size_t i) { return result.departures[i]; });
}

StepTrajectory queue_trajectory(QueueResult const& result) {
  return interval_count(
      result, [&](std::size_t i) { return result.arrivals[i]; },
      [&](std::size_t i) { return result.service_start(i); });
}

StepTrajectory busy_trajectory(QueueResult const& result) {
  return interval_count(
      result, [&](std::size_t i) { return result.service_start(i); },
      [&](std::size_t i) { return result.departures[i]; });
}

SummaryStats summarize(QueueResult const& result,
                       ServerSchedule const& schedule) {
  SummaryStats stats;
  stats.total_customers = result.size();
  stats.missed_customers = result.missed_count();
  std::size_t const served = stats.total_customers - stats.missed_customers;
  if (served == 0) {
    throw degenerate_window_error("no customer was served");
  }

  double horizon = 0.0;
  double wait_sum = 0.0;
  double response_sum = 0.0;
  double work = 0.0;
  for (std::size_t i = 0; i != result.size(); ++i) {
    if (!result.served(i)) {
      continue;
    }
    double const d = result.departures[i];
    double const a = result.arrivals[i];
    double const s = result.services[i];
    horizon = std::max(horizon, d);
    wait_sum += result.service_start(i) - a;
    response_sum += d - a;
    work += s;
  }
  if (!(horizon > 0.0)) {
    throw degenerate_window_error("averaging window [0, 0] has zero length");
  }

  auto const n = static_cast<double>(served);
  stats.horizon = horizon;
  stats.mean_waiting = wait_sum / n;
  stats.mean_response = response_sum / n;
  stats.utilization_factor = work / capacity_integral(schedule, horizon);
  stats.mean_queue_length = queue_trajectory(result).integral(horizon) / horizon;
  stats.mean_in_system = system_trajectory(result).integral(horizon) / horizon;
  return stats;
}

Ecdf ecdf(std::vector<double> samples) {
  std::erase_if(samples, [](double v) { return !std::isfinite(v); });
  std::sort(samples.begin(), samples.end());
  Ecdf out;
  auto const n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i != samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) {
      continue;
    }
    out.values.push_back(samples[i]);
    out.fractions.push_back(static_cast<double>(i + 1) / n);
  }
  return out;
}

} // namespace qdc
