#ifndef qdc_network_hpp
#define qdc_network_hpp

#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

/**
 * Feed-forward composition of queues.
 *
 * Every stage's arrivals are fully known before it runs, which is what lets
 * each stage be computed in a single pass. A customer missed at one stage
 * (departure +inf) is missed at every later stage as well.
 */
namespace qdc::network {

/// Per-customer branch labels for a parallel stage.
struct RouteTable {
  std::vector<std::string> labels;
};

/// One schedule per branch label.
using BranchSchedules = std::map<std::string, ServerSchedule>;

struct Routing {
  std::string column;
  BranchSchedules branches;
};

struct StageSpec {
  std::string name;
  /// Column holding this stage's per-customer service times.
  std::string service_column;
  /// Either a single queue or a set of labelled parallel queues.
  std::variant<ServerSchedule, Routing> servers;
  /// Optional column joined after the stage: the customer leaves at the
  /// later of its departure and this column's time.
  std::optional<std::string> join_column;
};

/// Named columns of per-customer values, all of the same length.
struct ColumnSet {
  std::map<std::string, std::vector<double>> numeric;
  std::map<std::string, std::vector<std::string>> text;

  std::vector<double> const& number(std::string const& name) const;
  std::vector<std::string> const& label(std::string const& name) const;
};

struct StageResult {
  std::string name;
  QueueResult queue;
  /// Departure after the optional join; equals queue.departures otherwise.
  std::vector<double> released;
  /// Branch label per customer for routed stages.
  std::vector<std::string> routes;
};

/**
 * Run one queue on arrivals that may contain +inf (customers already lost
 * upstream). Those customers are reported missed; the rest are queued
 * normally.
 */
QueueResult run_stage(std::span<double const> arrivals,
                      std::span<double const> services,
                      ServerSchedule const& schedule);

/**
 * Split customers by label, queue each branch on its own schedule and merge
 * the branch results back into input order. Server numbers are local to each
 * branch. Throws invalid_input_error for a label without a schedule.
 */
QueueResult route_parallel(std::span<double const> arrivals,
                           std::span<double const> services,
                           RouteTable const& routes,
                           BranchSchedules const& branches);

inline QueueResult route_parallel(WorkloadTable const& workload,
                                  RouteTable const& routes,
                                  BranchSchedules const& branches) {
  return route_parallel(workload.arrivals(), workload.services(), routes,
                        branches);
}

/// Chain stages: each stage's arrivals are the previous stage's released
/// times, the first stage takes `arrivals`.
std::vector<StageResult> tandem(std::span<double const> arrivals,
                                ColumnSet const& columns,
                                std::vector<StageSpec> const& stages);

/// Elementwise maximum; throws invalid_input_error on a length mismatch.
std::vector<double> fork_join(std::span<double const> lhs,
                              std::span<double const> rhs);

/// Left fold of fork_join over any number of equally long vectors.
std::vector<double> fork_join(std::vector<std::vector<double>> const& parts);

} // namespace qdc::network

#endif // qdc_network_hpp
