#include <qdc/bench.hpp>

#include <qdc/core.hpp>
#include <qdc/error.hpp>
#include <qdc/io.hpp>
#include <qdc/oracle.hpp>
#include <qdc/workload.hpp>

#include <algorithm>
#include <ostream>

namespace qdc::bench {

std::vector<duration> time_runs(std::size_t reps,
                                std::function<void()> const& fn) {
  std::vector<duration> samples;
  samples.reserve(reps);
  for (std::size_t r = 0; r != reps; ++r) {
    auto const start = clock::now();
    fn();
    samples.push_back(clock::now() - start);
  }
  return samples;
}

double median_seconds(std::vector<duration> samples) {
  if (samples.empty()) {
    return 0.0;
  }
  std::sort(samples.begin(), samples.end());
  auto const mid = samples.size() / 2;
  auto const seconds = [](duration d) {
    return std::chrono::duration<double>(d).count();
  };
  if (samples.size() % 2 == 1) {
    return seconds(samples[mid]);
  }
  return 0.5 * (seconds(samples[mid - 1]) + seconds(samples[mid]));
}

std::vector<Row> run(Config const& config) {
  if (config.reps < 1) {
    throw invalid_input_error("benchmark needs at least one repetition");
  }
  std::vector<Row> rows;
  for (auto n : config.sizes) {
    if (n < 1) {
      throw invalid_input_error("benchmark sizes must be at least 1");
    }
    auto const workload = generate_workload(
        WorkloadSpec{n, config.lambda, config.mu, config.seed});

    // Keeps the optimizer from discarding the computation.
    double sink = 0.0;
    auto qdc = time_runs(config.reps, [&] {
      sink += qdc_fixed(workload, config.servers).departures.back();
    });
    rows.push_back({"qdc", n, config.reps, median_seconds(std::move(qdc))});

    if (n <= config.des_max_n) {
      auto des = time_runs(config.reps, [&] {
        sink += oracle::des_simulate(workload, config.servers).departures.back();
      });
      rows.push_back({"des", n, config.reps, median_seconds(std::move(des))});
    }
    if (sink < 0.0) {
      rows.clear();
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::vector<Row> const& rows) {
  out << "engine,n,reps,median_seconds\n";
  for (auto const& r : rows) {
    out << r.engine << ',' << r.n << ',' << r.reps << ','
        << io::format_double(r.median_seconds) << '\n';
  }
}

} // namespace qdc::bench
