#include <qdc/network.hpp>

#include <qdc/core.hpp>
#include <qdc/error.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace qdc::network {

std::vector<double> const& ColumnSet::number(std::string const& name) const {
  auto it = numeric.find(name);
  if (it == numeric.end()) {
    throw invalid_input_error("missing numeric column '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> const& ColumnSet::label(std::string const& name) const {
  auto it = text.find(name);
  if (it == text.end()) {
    throw invalid_input_error("missing label column '" + name + "'");
  }
  return it->second;
}

namespace {

void require_same_length(std::size_t a, std::size_t b, char const* what) {
  if (a != b) {
    throw invalid_input_error(std::string(what) + ": length mismatch (" +
                              std::to_string(a) + " vs " + std::to_string(b) +
                              ")");
  }
}

// Queue the rows in `rows` on `schedule` and scatter the outcome into `out`.
void run_subset(std::span<double const> arrivals,
                std::span<double const> services,
                std::vector<std::size_t> const& rows,
                ServerSchedule const& schedule, QueueResult& out) {
  if (rows.empty()) {
    return;
  }
  std::vector<double> a;
  std::vector<double> s;
  a.reserve(rows.size());
  s.reserve(rows.size());
  for (auto i : rows) {
    a.push_back(arrivals[i]);
    s.push_back(services[i]);
  }
  auto const sub = run_queue(WorkloadTable(std::move(a), std::move(s)), schedule);
  for (std::size_t j = 0; j != rows.size(); ++j) {
    out.departures[rows[j]] = sub.departures[j];
    out.assignments[rows[j]] = sub.assignments[j];
  }
}

QueueResult missed_everywhere(std::span<double const> arrivals,
                              std::span<double const> services) {
  QueueResult r;
  r.arrivals.assign(arrivals.begin(), arrivals.end());
  r.services.assign(services.begin(), services.end());
  r.departures.assign(arrivals.size(), infinity);
  r.assignments.assign(arrivals.size(), no_server);
  return r;
}

} // namespace

QueueResult run_stage(std::span<double const> arrivals,
                      std::span<double const> services,
                      ServerSchedule const& schedule) {
  require_same_length(arrivals.size(), services.size(), "stage");
  auto result = missed_everywhere(arrivals, services);
  std::vector<std::size_t> reachable;
  reachable.reserve(arrivals.size());
  for (std::size_t i = 0; i != arrivals.size(); ++i) {
    if (arrivals[i] != infinity) {
      reachable.push_back(i);
    }
  }
  run_subset(arrivals, services, reachable, schedule, result);
  return result;
}

QueueResult route_parallel(std::span<double const> arrivals,
                           std::span<double const> services,
                           RouteTable const& routes,
                           BranchSchedules const& branches) {
  require_same_length(arrivals.size(), services.size(), "parallel stage");
  require_same_length(arrivals.size(), routes.labels.size(), "route table");

  std::map<std::string, std::vector<std::size_t>> members;
  for (auto const& [label, schedule] : branches) {
    members[label];
  }
  for (std::size_t i = 0; i != arrivals.size(); ++i) {
    auto it = members.find(routes.labels[i]);
    if (it == members.end()) {
      throw invalid_input_error("row " + std::to_string(i + 1) +
                                ": no schedule for route '" +
                                routes.labels[i] + "'");
    }
    if (arrivals[i] != infinity) {
      it->second.push_back(i);
    }
  }

  auto result = missed_everywhere(arrivals, services);
  for (auto const& [label, rows] : members) {
    run_subset(arrivals, services, rows, branches.at(label), result);
  }
  return result;
}

std::vector<StageResult> tandem(std::span<double const> arrivals,
                                ColumnSet const& columns,
                                std::vector<StageSpec> const& stages) {
  std::set<std::string> names;
  for (auto const& stage : stages) {
    if (!names.insert(stage.name).second) {
      throw invalid_input_error("duplicate stage name '" + stage.name + "'");
    }
  }

  std::vector<StageResult> out;
  out.reserve(stages.size());
  std::vector<double> current(arrivals.begin(), arrivals.end());
  for (auto const& stage : stages) {
    auto const& services = columns.number(stage.service_column);
    StageResult r;
    r.name = stage.name;
    if (auto const* schedule = std::get_if<ServerSchedule>(&stage.servers)) {
      r.queue = run_stage(current, services, *schedule);
    } else {
      auto const& routing = std::get<Routing>(stage.servers);
      r.routes = columns.label(routing.column);
      r.queue = route_parallel(current, services, RouteTable{r.routes},
                               routing.branches);
    }
    r.released = stage.join_column
                     ? fork_join(r.queue.departures,
                                 columns.number(*stage.join_column))
                     : r.queue.departures;
    current = r.released;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> fork_join(std::span<double const> lhs,
                              std::span<double const> rhs) {
  require_same_length(lhs.size(), rhs.size(), "fork/join");
  std::vector<double> out(lhs.size());
  std::transform(lhs.begin(), lhs.end(), rhs.begin(), out.begin(),
                 [](double l, double r) { return std::max(l, r); });
  return out;
}

std::vector<double> fork_join(std::vector<std::vector<double>> const& parts) {
  if (parts.empty()) {
    return {};
  }
  std::vector<double> out = parts.front();
  for (std::size_t j = 1; j < parts.size(); ++j) {
    out = fork_join(out, parts[j]);
  }
  return out;
}

} // namespace qdc::network
