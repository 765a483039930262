#include <qdc/oracle.hpp>

#include <qdc/error.hpp>

#include <deque>
#include <optional>
#include <tuple>

namespace qdc::oracle {

bool EventCalendar::later::operator()(event const& l,
                                      event const& r) const noexcept {
  return std::tie(l.time, l.kind, l.index) > std::tie(r.time, r.kind, r.index);
}

event EventCalendar::pop() {
  event e = heap_.top();
  heap_.pop();
  return e;
}

namespace {

class simulation {
public:
  simulation(WorkloadTable const& workload, std::span<double const> knots,
             std::span<std::uint32_t const> counts)
      : workload_(workload), knots_(knots), counts_(counts) {
    std::uint32_t most = 0;
    for (auto c : counts_) {
      most = std::max(most, c);
    }
    serving_.assign(most, std::nullopt);
    released_.assign(most, 0.0);
    open_ = counts_[0];

    result_.arrivals.assign(workload.arrivals().begin(),
                            workload.arrivals().end());
    result_.services.assign(workload.services().begin(),
                            workload.services().end());
    result_.departures.assign(workload.size(), infinity);
    result_.assignments.assign(workload.size(), no_server);
  }

  QueueResult run() && {
    for (std::size_t l = 0; l != knots_.size(); ++l) {
      calendar_.push({knots_[l], event_kind::schedule_change, l});
    }
    for (std::size_t i = 0; i != workload_.size(); ++i) {
      calendar_.push({workload_.arrivals()[i], event_kind::arrival, i});
    }
    while (!calendar_.empty()) {
      event const e = calendar_.pop();
      switch (e.kind) {
      case event_kind::schedule_change:
        on_schedule_change(e);
        break;
      case event_kind::arrival:
        on_arrival(e);
        break;
      case event_kind::departure:
        on_departure(e);
        break;
      }
    }
    // Whoever is still in line was never served; their entries stay at
    // +inf / no_server.
    return std::move(result_);
  }

private:
  std::optional<std::size_t> idle_open_server() const {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k != open_; ++k) {
      if (!serving_[k] && (!best || released_[k] < released_[*best])) {
        best = k;
      }
    }
    return best;
  }

  void start(std::size_t server, std::size_t customer, double now) {
    serving_[server] = customer;
    double const done = now + workload_.services()[customer];
    result_.departures[customer] = done;
    result_.assignments[customer] = static_cast<server_id>(server + 1);
    calendar_.push({done, event_kind::departure, customer});
  }

  void serve_line(double now) {
    while (!line_.empty()) {
      auto k = idle_open_server();
      if (!k) {
        break;
      }
      std::size_t next = line_.front();
      line_.pop_front();
      start(*k, next, now);
    }
  }

  void on_arrival(event const& e) {
    if (auto k = idle_open_server()) {
      start(*k, e.index, e.time);
    } else {
      line_.push_back(e.index);
    }
  }

  void on_departure(event const& e) {
    std::size_t const k = result_.assignments[e.index] - 1;
    serving_[k].reset();
    released_[k] = e.time;
    if (!calendar_.empty()) {
      event const& next = calendar_.top();
      if (next.time == e.time && next.kind == event_kind::departure) {
        return;
      }
    }
    serve_line(e.time);
  }

  void on_schedule_change(event const& e) {
    std::size_t const opened = counts_[e.index + 1];
    for (std::size_t k = open_; k < opened; ++k) {
      released_[k] = e.time;
    }
    open_ = opened;
    serve_line(e.time);
  }

  WorkloadTable const& workload_;
  std::span<double const> knots_;
  std::span<std::uint32_t const> counts_;

  EventCalendar calendar_;
  std::deque<std::size_t> line_;
  std::vector<std::optional<std::size_t>> serving_;
  std::vector<double> released_;
  std::size_t open_ = 0;
  QueueResult result_;
};

} // namespace

QueueResult des_simulate(WorkloadTable const& workload, std::uint32_t servers) {
  if (servers < 1) {
    throw invalid_input_error("server count must be at least 1");
  }
  std::uint32_t const counts[] = {servers};
  return simulation(workload, {}, counts).run();
}

QueueResult des_simulate_stepfun(WorkloadTable const& workload,
                                 ServerStepFunction const& schedule) {
  if (!check_condition(workload.services(), schedule)) {
    throw condition_violated_error(
        "event simulation of a step-function schedule requires every service "
        "to be shorter than the narrowest interior epoch");
  }
  return simulation(workload, schedule.knots(), schedule.counts()).run();
}

} // namespace qdc::oracle
