#ifndef qdc_oracle_hpp
#define qdc_oracle_hpp

#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <cstddef>
#include <cstdint>
#include <queue>
#include <vector>

/**
 * Reference discrete-event simulation of a FCFS multi-server queue.
 *
 * This is the textbook approach: a calendar of pending events, a FIFO
 * waiting line and per-server busy flags. It shares no code with the
 * departure-computation engines and is used to cross-check them and as the
 * slow baseline in benchmarks.
 */
namespace qdc::oracle {

enum class event_kind : std::uint8_t {
  schedule_change = 0,
  arrival = 1,
  departure = 2,
};

struct event {
  double time;
  event_kind kind;
  /// Customer row for arrivals and departures, epoch index for schedule
  /// changes.
  std::size_t index;
};

/**
 * Pending events. Dequeued by time; at equal times schedule changes come
 * first, then arrivals, then departures, then lower index.
 */
class EventCalendar {
public:
  void push(event e) { heap_.push(e); }
  event pop();
  event const& top() const { return heap_.top(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

private:
  struct later {
    bool operator()(event const& l, event const& r) const noexcept;
  };
  std::priority_queue<event, std::vector<event>, later> heap_;
};

/**
 * K servers, always open. An arriving customer seizes the idle server that
 * was released earliest (lowest index on ties) or joins the back of the
 * line. Servers freed at the same instant are all released before the line
 * is served, so simultaneous departures do not depend on customer order.
 */
QueueResult des_simulate(WorkloadTable const& workload, std::uint32_t servers);

/**
 * Servers 1..y_e are open in epoch e. At a knot, newly opened servers count
 * as released at that knot and start serving the line; servers being closed
 * finish their current customer and then stop. Only defined when the workload satisfies check_condition;
 * throws condition_violated_error otherwise.
 */
QueueResult des_simulate_stepfun(WorkloadTable const& workload,
                                 ServerStepFunction const& schedule);

} // namespace qdc::oracle

#endif // qdc_oracle_hpp
