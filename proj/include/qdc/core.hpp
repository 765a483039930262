#ifndef qdc_core_hpp
#define qdc_core_hpp

#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <cstdint>

/**
 * Queue departure computation.
 *
 * Every engine here treats the arrival times as the complete, fixed event
 * list. Customers are visited once in (stable) arrival order while a
 * K-length vector holds the time each server next becomes free; each
 * customer takes the server that became (or becomes) free first, ties going
 * to the lowest server index. Among idle servers this is the one that has
 * been idle longest. Results come back in input order.
 *
 * All engines are first-come first-served with unlimited queue capacity.
 */
namespace qdc {

/// Single-server recursion d_i = max(a_i, d_{i-1}) + s_i.
QueueResult lindley_departures(WorkloadTable const& workload);

/// K identical servers, always open.
QueueResult qdc_fixed(WorkloadTable const& workload, std::uint32_t servers);

/**
 * Time-varying server count given as a step function.
 *
 * Servers above the current count are closed: a closing server finishes its
 * customer but takes no new one until it reopens. Requires that no service
 * time span a whole interior epoch (see check_condition) and throws
 * condition_violated_error otherwise; use qdc_server_list in that case.
 * Customers that can never be served are reported as missed.
 */
QueueResult qdc_stepfun(WorkloadTable const& workload,
                        ServerStepFunction const& schedule);

/**
 * Explicit per-server availability; no restriction on service lengths.
 * Each customer takes the server on which it can start earliest. Equal
 * starts go to the server that has been free longest, counting a reopened
 * server as free from its reopening, and then to the lowest index.
 */
QueueResult qdc_server_list(WorkloadTable const& workload,
                            ServerAvailabilityList const& schedule);

/// Dispatch on the schedule alternative.
QueueResult run_queue(WorkloadTable const& workload,
                      ServerSchedule const& schedule);

namespace detail {
/// Above this many servers qdc_fixed tracks servers in a heap instead of
/// scanning the whole state vector per customer.
inline constexpr std::uint32_t linear_scan_limit = 32;

QueueResult qdc_fixed_linear(WorkloadTable const& workload,
                             std::uint32_t servers);
QueueResult qdc_fixed_heap(WorkloadTable const& workload,
                           std::uint32_t servers);
} // namespace detail

} // namespace qdc

#endif // qdc_core_hpp
