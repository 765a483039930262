#ifndef qdc_schedule_hpp
#define qdc_schedule_hpp

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace qdc {

/// A constant number of servers, always open.
struct FixedServers {
  std::uint32_t count = 1;

  explicit FixedServers(std::uint32_t k = 1);
};

/**
 * Number of open servers as a step function of time.
 *
 * The knots x_1 < ... < x_L split time into L+1 epochs
 * (0, x_1], (x_1, x_2], ..., (x_L, inf); counts[e] servers are open during
 * epoch e. A time sitting exactly on a knot belongs to the earlier epoch.
 */
class ServerStepFunction {
public:
  ServerStepFunction(std::vector<double> knots,
                     std::vector<std::uint32_t> counts);

  std::span<double const> knots() const noexcept { return knots_; }
  std::span<std::uint32_t const> counts() const noexcept { return counts_; }
  std::size_t epoch_count() const noexcept { return counts_.size(); }
  std::uint32_t max_count() const noexcept;

  /// Index of the epoch containing t (t <= x_1 maps to epoch 0).
  std::size_t epoch_at(double t) const noexcept;

  /// Shortest width among the bounded interior epochs, +inf if there are
  /// fewer than two knots.
  double min_interior_width() const noexcept;

private:
  std::vector<double> knots_;
  std::vector<std::uint32_t> counts_;
};

/// Open/closed pattern of one server: open[e] is 1 when the server is open
/// during epoch e of its own knot partition.
struct ServerAvailability {
  std::vector<double> knots;
  std::vector<std::uint8_t> open;
};

/// Explicit per-server availability, server k at index k-1.
class ServerAvailabilityList {
public:
  explicit ServerAvailabilityList(std::vector<ServerAvailability> servers);

  std::size_t size() const noexcept { return servers_.size(); }
  ServerAvailability const& operator[](std::size_t k) const noexcept {
    return servers_[k];
  }
  std::vector<ServerAvailability> const& servers() const noexcept {
    return servers_;
  }

private:
  std::vector<ServerAvailability> servers_;
};

using ServerSchedule =
    std::variant<FixedServers, ServerStepFunction, ServerAvailabilityList>;

/// True when every service time is strictly shorter than the narrowest
/// interior epoch, i.e. no service can span a whole epoch.
bool check_condition(std::span<double const> services,
                     ServerStepFunction const& schedule) noexcept;

/**
 * Expand a step function into per-server availability. Server k is open
 * exactly on the epochs whose count is at least k, so the lowest indices
 * stay open longest. Adjacent epochs with the same state are merged.
 */
ServerAvailabilityList counts_to_server_list(ServerStepFunction const& schedule);

std::uint32_t open_count_at(ServerStepFunction const& schedule, double t);
std::uint32_t open_count_at(ServerAvailabilityList const& schedule, double t);
std::uint32_t open_count_at(ServerSchedule const& schedule, double t);

/**
 * Earliest time >= t at which a server with the given availability is
 * open: t itself if t lies in an open epoch, otherwise the start of the next
 * open epoch, or +inf if the server never opens again.
 */
double next_available(double t, std::span<double const> knots,
                      std::span<std::uint8_t const> open) noexcept;

inline double next_available(double t, ServerAvailability const& server) {
  return next_available(t, server.knots, server.open);
}

/// Largest number of servers the schedule ever uses.
std::size_t server_count(ServerSchedule const& schedule) noexcept;

/// Integral of the open-server count over [0, horizon].
double capacity_integral(ServerSchedule const& schedule, double horizon);

} // namespace qdc

#endif // qdc_schedule_hpp
