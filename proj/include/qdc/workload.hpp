#ifndef qdc_workload_hpp
#define qdc_workload_hpp

#include <qdc/types.hpp>

#include <cmath>
#include <cstdint>
#include <random>

namespace qdc {

/// Parameters for a synthetic M/M workload.
struct WorkloadSpec {
  std::size_t n = 0;
  double lambda = 1.0;
  double mu = 1.0;
  std::uint64_t seed = 1;

  /// Throws invalid_input_error unless lambda and mu are positive.
  void validate() const;
};

/**
 * Exponential variates by inversion on top of std::mt19937_64, whose output
 * sequence is fixed by the C++ standard. A uniform u in [0, 1) is built from
 * the top 53 bits of one engine draw and mapped to -log1p(-u) / rate.
 */
class ExponentialSampler {
public:
  explicit ExponentialSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double operator()(double rate) noexcept { return -std::log1p(-uniform()) / rate; }

private:
  std::mt19937_64 engine_;
};

/**
 * n customers with Exp(lambda) inter-arrival times (cumulatively summed into
 * arrivals) and Exp(mu) service times. All inter-arrival draws come first,
 * then all service draws, from a single stream seeded with spec.seed.
 */
WorkloadTable generate_workload(WorkloadSpec const& spec);

} // namespace qdc

#endif // qdc_workload_hpp
