#ifndef qdc_bench_hpp
#define qdc_bench_hpp

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdc::bench {

using clock = std::chrono::steady_clock;
using duration = clock::duration;

/// Wall-clock time of each of `reps` calls to fn.
std::vector<duration> time_runs(std::size_t reps,
                                std::function<void()> const& fn);

/// Median of the samples in seconds (mean of the middle pair for even
/// counts). Zero for an empty sample.
double median_seconds(std::vector<duration> samples);

struct Config {
  std::vector<std::size_t> sizes{100, 1000, 100000, 1000000};
  std::size_t reps = 10;
  std::uint32_t servers = 2;
  double lambda = 1.0;
  double mu = 1.0 / 0.9;
  std::uint64_t seed = 1;
  /// The event-simulation baseline is skipped above this size.
  std::size_t des_max_n = 1000000;
};

struct Row {
  std::string engine;
  std::size_t n = 0;
  std::size_t reps = 0;
  double median_seconds = 0.0;
};

/**
 * Median time per (engine, n) for the departure-computation engine ("qdc")
 * and the event-simulation baseline ("des"). The workload for each n is
 * generated once, outside the timed region.
 */
std::vector<Row> run(Config const& config);

void write_csv(std::ostream& out, std::vector<Row> const& rows);

} // namespace qdc::bench

#endif // qdc_bench_hpp
