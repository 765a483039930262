#ifndef qdc_metrics_hpp
#define qdc_metrics_hpp

#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdc {

/// Piecewise-constant count over time. levels[j] holds on
/// [times[j], times[j+1]); the count is 0 before times[0].
struct StepTrajectory {
  std::vector<double> times;
  std::vector<std::int64_t> levels;

  bool empty() const noexcept { return times.empty(); }

  /// Integral of the level over [0, horizon].
  double integral(double horizon) const noexcept;
  std::int64_t level_at(double t) const noexcept;
};

struct SummaryStats {
  std::size_t total_customers = 0;
  std::size_t missed_customers = 0;
  double mean_waiting = 0.0;
  double mean_response = 0.0;
  double utilization_factor = 0.0;
  double mean_queue_length = 0.0;
  double mean_in_system = 0.0;
  /// Averaging window [0, horizon]: the last finite departure.
  double horizon = 0.0;
};

/// d - a - s per customer, +inf for missed customers. Values are not
/// clamped, so rounding can leave tiny negatives.
std::vector<double> waiting_times(QueueResult const& result);

/// Customers present (queued or in service): a_i <= t < d_i.
StepTrajectory system_trajectory(QueueResult const& result);

/// Customers queued but not yet in service: a_i <= t < d_i - s_i.
StepTrajectory queue_trajectory(QueueResult const& result);

/// Customers in service: d_i - s_i <= t < d_i.
StepTrajectory busy_trajectory(QueueResult const& result);

/**
 * Summary statistics over the window [0, T], T the last finite departure.
 * Missed customers are counted but excluded from every mean. Utilization
 * divides the total served work by the integral of the open-server count.
 * Throws degenerate_window_error when nothing was served or T is zero.
 */
SummaryStats summarize(QueueResult const& result,
                       ServerSchedule const& schedule);

/// Empirical CDF of the finite values: sorted distinct values with the
/// fraction of samples at or below each.
struct Ecdf {
  std::vector<double> values;
  std::vector<double> fractions;
};
Ecdf ecdf(std::vector<double> samples);

} // namespace qdc

#endif // qdc_metrics_hpp
