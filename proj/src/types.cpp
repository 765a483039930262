#include <qdc/types.hpp>

#include <qdc/error.hpp>

#include <algorithm>
#include <cmath>

namespace qdc {

namespace {

void check_times(std::span<double const> values, char const* what) {
  for (std::size_t i = 0; i != values.size(); ++i) {
    double v = values[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw invalid_input_error(std::string(what) + " at row " +
                                std::to_string(i + 1) +
                                " must be finite and non-negative");
    }
  }
}

} // namespace

WorkloadTable::WorkloadTable(std::vector<double> arrivals,
                             std::vector<double> services,
                             std::vector<std::string> ids)
    : arrivals_(std::move(arrivals)), services_(std::move(services)),
      ids_(std::move(ids)) {
  if (arrivals_.size() != services_.size()) {
    throw invalid_input_error("arrivals and services differ in length (" +
                              std::to_string(arrivals_.size()) + " vs " +
                              std::to_string(services_.size()) + ")");
  }
  if (!ids_.empty() && ids_.size() != arrivals_.size()) {
    throw invalid_input_error("ids and arrivals differ in length");
  }
  check_times(arrivals_, "arrival");
  check_times(services_, "service");
}

std::string WorkloadTable::id(std::size_t i) const {
  return ids_.empty() ? std::to_string(i + 1) : ids_[i];
}

std::size_t QueueResult::missed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(assignments.begin(), assignments.end(), no_server));
}

double QueueResult::service_start(std::size_t i) const noexcept {
  // d == a + s means no wait even when (a + s) - s rounds above a.
  if (departures[i] == arrivals[i] + services[i]) {
    return arrivals[i];
  }
  return std::max(arrivals[i], departures[i] - services[i]);
}

} // namespace qdc
