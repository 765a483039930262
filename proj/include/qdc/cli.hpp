#ifndef qdc_cli_hpp
#define qdc_cli_hpp

#include <qdc/bench.hpp>
#include <qdc/error.hpp>
#include <qdc/workload.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

namespace qdc::cli {

/// Process exit statuses.
enum exit_status : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_invalid_input = 2,
  exit_condition_violated = 3,
  exit_validation_failure = 4,
};

int exit_status_for(error_kind kind) noexcept;

struct SampleOptions {
  WorkloadSpec spec;
  /// "-" writes to the output stream.
  std::string output = "-";
};

/// What cmd_simulate writes besides the per-customer table.
inline constexpr char const* emit_summary = "summary";
inline constexpr char const* emit_table = "table";
inline constexpr char const* emit_trajectories = "trajectories";
inline constexpr char const* emit_ecdf = "ecdf";

struct RunConfig {
  /// Exactly one of input / generate.
  std::optional<std::string> input;
  std::optional<WorkloadSpec> generate;
  /// Schedule JSON, inline or a file path.
  std::string schedule = R"({"type":"fixed","k":1})";
  /// Per-customer CSV path; trajectory and ecdf files are written next to
  /// it as <stem>_system.csv, <stem>_queue.csv and <stem>_ecdf.csv.
  std::string output;
  std::set<std::string> emit{emit_summary, emit_table};
};

struct NetworkOptions {
  std::string input;
  /// Pipeline JSON, inline or a file path.
  std::string pipeline;
  /// Directory receiving one CSV per stage; empty skips them.
  std::string output_dir;
};

struct ValidateOptions {
  WorkloadSpec spec;
  std::uint32_t servers = 2;
  double tolerance = 1e-8;
  /// Test hook: perturb one computed departure so the check must fail.
  bool corrupt_engine = false;
};

struct ValidateReport {
  std::size_t customers = 0;
  double max_relative_error = 0.0;
  bool assignments_match = true;
  bool passed = true;
};

struct MmkOptions {
  double lambda = 2.0;
  double mu = 1.0;
  std::uint32_t servers = 3;
  std::uint64_t max_n = 20;
};

int cmd_sample(SampleOptions const& options, std::ostream& out,
               std::ostream& err);
int cmd_simulate(RunConfig const& config, std::ostream& out, std::ostream& err);
int cmd_network(NetworkOptions const& options, std::ostream& out,
                std::ostream& err);

/// Compare sorted departures of the departure computation against the
/// event simulation on one generated workload.
ValidateReport validate(ValidateOptions const& options);
int cmd_validate(ValidateOptions const& options, std::ostream& out,
                 std::ostream& err);

int cmd_bench(bench::Config const& config, std::string const& output,
              std::ostream& out, std::ostream& err);
int cmd_mmk(MmkOptions const& options, std::ostream& out, std::ostream& err);

/// Parse argv and dispatch to a subcommand.
int run(int argc, char const* const* argv, std::ostream& out,
        std::ostream& err);

} // namespace qdc::cli

#endif // qdc_cli_hpp
