#ifndef qdc_types_hpp
#define qdc_types_hpp

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace qdc {

/// Sentinel for "never": closed servers and departures of missed customers.
inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// 1-based server index; 0 marks a customer that was never served.
using server_id = std::uint32_t;
inline constexpr server_id no_server = 0;

/**
 * Per-customer arrival and service times.
 *
 * Arrivals need not be sorted. Every time must be finite and non-negative;
 * the constructor throws invalid_input_error otherwise. Identifiers are
 * optional labels carried through to output, an empty vector means the
 * customers are simply numbered 1..n.
 */
class WorkloadTable {
public:
  WorkloadTable() = default;
  WorkloadTable(std::vector<double> arrivals, std::vector<double> services,
                std::vector<std::string> ids = {});

  std::size_t size() const noexcept { return arrivals_.size(); }
  bool empty() const noexcept { return arrivals_.empty(); }

  std::span<double const> arrivals() const noexcept { return arrivals_; }
  std::span<double const> services() const noexcept { return services_; }
  std::vector<std::string> const& ids() const noexcept { return ids_; }

  /// Identifier for row i, falling back to the 1-based row number.
  std::string id(std::size_t i) const;

private:
  std::vector<double> arrivals_;
  std::vector<double> services_;
  std::vector<std::string> ids_;
};

/**
 * Output of a queue computation, always in input order.
 *
 * departures[i] is +infinity and assignments[i] is no_server exactly when
 * customer i was missed.
 */
struct QueueResult {
  std::vector<double> departures;
  std::vector<server_id> assignments;
  std::vector<double> arrivals;
  std::vector<double> services;

  std::size_t size() const noexcept { return departures.size(); }
  bool served(std::size_t i) const noexcept {
    return assignments[i] != no_server;
  }
  std::size_t missed_count() const noexcept;

  /// Time service began, never earlier than the arrival. A departure equal
  /// to a + s (as computed in floating point) gives exactly the arrival.
  double service_start(std::size_t i) const noexcept;
};

} // namespace qdc

#endif // qdc_types_hpp
