#include <qdc/schedule.hpp>

#include <qdc/error.hpp>
#include <qdc/types.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace qdc {

namespace {

void check_knots(std::span<double const> knots, std::string const& where) {
  for (std::size_t i = 0; i != knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || knots[i] <= 0.0) {
      throw invalid_input_error(where + ": knots must be finite and positive");
    }
    if (i > 0 && knots[i] <= knots[i - 1]) {
      throw invalid_input_error(where + ": knots must be strictly increasing");
    }
  }
}

// Length of the overlap between epoch (lo, hi] and [0, horizon].
double overlap(double lo, double hi, double horizon) {
  return std::max(0.0, std::min(hi, horizon) - std::max(lo, 0.0));
}

// Integral over [0, horizon] of a level that is constant on each epoch.
template <typename Level>
double integrate_levels(std::span<double const> knots,
                        std::span<Level const> levels, double horizon) {
  double total = 0.0;
  for (std::size_t e = 0; e != levels.size(); ++e) {
    double lo = e == 0 ? 0.0 : knots[e - 1];
    double hi = e == knots.size() ? infinity : knots[e];
    total += static_cast<double>(levels[e]) * overlap(lo, hi, horizon);
  }
  return total;
}

} // namespace

FixedServers::FixedServers(std::uint32_t k) : count(k) {
  if (k < 1) {
    throw invalid_input_error("server count must be at least 1");
  }
}

ServerStepFunction::ServerStepFunction(std::vector<double> knots,
                                       std::vector<std::uint32_t> counts)
    : knots_(std::move(knots)), counts_(std::move(counts)) {
  check_knots(knots_, "step function");
  if (counts_.size() != knots_.size() + 1) {
    throw invalid_input_error(
        "step function needs exactly one more count than knots (got " +
        std::to_string(knots_.size()) + " knots and " +
        std::to_string(counts_.size()) + " counts)");
  }
  if (max_count() < 1) {
    throw invalid_input_error("step function never opens a server");
  }
}

std::uint32_t ServerStepFunction::max_count() const noexcept {
  return *std::max_element(counts_.begin(), counts_.end());
}

std::size_t ServerStepFunction::epoch_at(double t) const noexcept {
  // First knot >= t closes the epoch that contains t.
  return static_cast<std::size_t>(
      std::lower_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
}

double ServerStepFunction::min_interior_width() const noexcept {
  double width = infinity;
  for (std::size_t l = 1; l < knots_.size(); ++l) {
    width = std::min(width, knots_[l] - knots_[l - 1]);
  }
  return width;
}

ServerAvailabilityList::ServerAvailabilityList(
    std::vector<ServerAvailability> servers)
    : servers_(std::move(servers)) {
  if (servers_.empty()) {
    throw invalid_input_error("server list must contain at least one server");
  }
  for (std::size_t k = 0; k != servers_.size(); ++k) {
    auto const where = "server " + std::to_string(k + 1);
    auto const& s = servers_[k];
    check_knots(s.knots, where);
    if (s.open.size() != s.knots.size() + 1) {
      throw invalid_input_error(where +
                                ": availability needs one more entry than knots");
    }
    for (auto v : s.open) {
      if (v > 1) {
        throw invalid_input_error(where + ": availability must be 0 or 1");
      }
    }
  }
}

bool check_condition(std::span<double const> services,
                     ServerStepFunction const& schedule) noexcept {
  double const width = schedule.min_interior_width();
  if (width == infinity) {
    return true;
  }
  return std::all_of(services.begin(), services.end(),
                     [width](double s) { return s < width; });
}

ServerAvailabilityList counts_to_server_list(ServerStepFunction const& schedule) {
  auto const knots = schedule.knots();
  auto const counts = schedule.counts();
  std::vector<ServerAvailability> servers(schedule.max_count());
  for (std::size_t k = 0; k != servers.size(); ++k) {
    auto& server = servers[k];
    server.open.push_back(counts[0] > k ? 1 : 0);
    for (std::size_t e = 1; e != counts.size(); ++e) {
      std::uint8_t state = counts[e] > k ? 1 : 0;
      if (state != server.open.back()) {
        server.knots.push_back(knots[e - 1]);
        server.open.push_back(state);
      }
    }
  }
  return ServerAvailabilityList(std::move(servers));
}

std::uint32_t open_count_at(ServerStepFunction const& schedule, double t) {
  return schedule.counts()[schedule.epoch_at(t)];
}

std::uint32_t open_count_at(ServerAvailabilityList const& schedule, double t) {
  std::uint32_t n = 0;
  for (auto const& server : schedule.servers()) {
    auto e = std::lower_bound(server.knots.begin(), server.knots.end(), t) -
             server.knots.begin();
    n += server.open[static_cast<std::size_t>(e)];
  }
  return n;
}

std::uint32_t open_count_at(ServerSchedule const& schedule, double t) {
  struct visitor {
    double t;
    std::uint32_t operator()(FixedServers const& f) const { return f.count; }
    std::uint32_t operator()(ServerStepFunction const& s) const {
      return open_count_at(s, t);
    }
    std::uint32_t operator()(ServerAvailabilityList const& l) const {
      return open_count_at(l, t);
    }
  };
  return std::visit(visitor{t}, schedule);
}

double next_available(double t, std::span<double const> knots,
                      std::span<std::uint8_t const> open) noexcept {
  auto e = static_cast<std::size_t>(
      std::lower_bound(knots.begin(), knots.end(), t) - knots.begin());
  if (open[e]) {
    return t;
  }
  for (++e; e < open.size(); ++e) {
    if (open[e]) {
      return knots[e - 1];
    }
  }
  return infinity;
}

std::size_t server_count(ServerSchedule const& schedule) noexcept {
  struct visitor {
    std::size_t operator()(FixedServers const& f) const { return f.count; }
    std::size_t operator()(ServerStepFunction const& s) const {
      return s.max_count();
    }
    std::size_t operator()(ServerAvailabilityList const& l) const {
      return l.size();
    }
  };
  return std::visit(visitor{}, schedule);
}

double capacity_integral(ServerSchedule const& schedule, double horizon) {
  struct visitor {
    double horizon;
    double operator()(FixedServers const& f) const {
      return f.count * horizon;
    }
    double operator()(ServerStepFunction const& s) const {
      return integrate_levels(s.knots(), s.counts(), horizon);
    }
    double operator()(ServerAvailabilityList const& l) const {
      double total = 0.0;
      for (auto const& server : l.servers()) {
        total += integrate_levels(std::span<double const>(server.knots),
                                  std::span<std::uint8_t const>(server.open),
                                  horizon);
      }
      return total;
    }
  };
  return std::visit(visitor{horizon}, schedule);
}

} // namespace qdc
