#include <qdc/cli.hpp>

#include <qdc/analytic.hpp>
#include <qdc/core.hpp>
#include <qdc/io.hpp>
#include <qdc/metrics.hpp>
#include <qdc/network.hpp>
#include <qdc/oracle.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace qdc::cli {

namespace fs = std::filesystem;

int exit_status_for(error_kind kind) noexcept {
  switch (kind) {
  case error_kind::invalid_input:
  case error_kind::unstable_system:
  case error_kind::degenerate_window:
    return exit_invalid_input;
  case error_kind::condition_violated:
    return exit_condition_violated;
  case error_kind::validation_failure:
    return exit_validation_failure;
  case error_kind::io_failure:
    return exit_failure;
  }
  return exit_failure;
}

namespace {

std::ofstream open_output(std::string const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io_error("cannot open '" + path + "' for writing");
  }
  return out;
}

void close_output(std::ofstream& out, std::string const& path) {
  out.close();
  if (!out) {
    throw io_error("failed writing '" + path + "'");
  }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (error const& e) {
    err << "error: " << e.what() << '\n';
    return exit_status_for(e.kind());
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

// <dir>/<stem>_<suffix>.csv next to the main output file.
std::string sibling(std::string const& path, std::string const& suffix) {
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + suffix + ".csv"))
      .string();
}

} // namespace

int cmd_sample(SampleOptions const& options, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    auto const workload = generate_workload(options.spec);
    if (options.output == "-") {
      io::write_workload_csv(out, workload);
    } else {
      auto file = open_output(options.output);
      io::write_workload_csv(file, workload);
      close_output(file, options.output);
    }
    return int{exit_ok};
  });
}

int cmd_simulate(RunConfig const& config, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    if (config.input.has_value() == config.generate.has_value()) {
      throw invalid_input_error(
          "give either an input CSV or workload parameters, not both");
    }
    for (auto const& e : config.emit) {
      if (e != emit_summary && e != emit_table && e != emit_trajectories &&
          e != emit_ecdf) {
        throw invalid_input_error("unknown --emit value '" + e + "'");
      }
    }
    bool const wants_files = config.emit.contains(emit_trajectories) ||
                             config.emit.contains(emit_ecdf);
    if (wants_files && config.output.empty()) {
      throw invalid_input_error(
          "trajectories and ecdf output need an --output path");
    }

    auto const workload =
        config.input ? io::workload_from_csv(io::read_csv_file(*config.input))
                     : generate_workload(*config.generate);
    auto const schedule =
        io::schedule_from_json(io::load_json(config.schedule), "schedule");
    auto const result = run_queue(workload, schedule);

    if (!config.output.empty() && config.emit.contains(emit_table)) {
      auto file = open_output(config.output);
      io::write_result_csv(file, result, workload.ids());
      close_output(file, config.output);
    }
    if (config.emit.contains(emit_trajectories)) {
      auto const sys_path = sibling(config.output, "system");
      auto sys = open_output(sys_path);
      io::write_trajectory_csv(sys, system_trajectory(result));
      close_output(sys, sys_path);
      auto const queue_path = sibling(config.output, "queue");
      auto queue = open_output(queue_path);
      io::write_trajectory_csv(queue, queue_trajectory(result));
      close_output(queue, queue_path);
    }
    if (config.emit.contains(emit_ecdf)) {
      auto const path = sibling(config.output, "ecdf");
      auto file = open_output(path);
      io::write_ecdf_csv(file, ecdf(result.arrivals), ecdf(result.departures));
      close_output(file, path);
    }
    if (config.emit.contains(emit_summary)) {
      if (result.missed_count() == result.size()) {
        io::write_empty_summary(out, result.size(), result.missed_count());
      } else {
        io::write_summary(out, summarize(result, schedule));
      }
    }
    return int{exit_ok};
  });
}

int cmd_network(NetworkOptions const& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    auto const pipeline = io::pipeline_from_json(io::load_json(options.pipeline));
    auto const table = io::read_csv_file(options.input);
    auto const columns = io::columns_from_csv(table);
    auto const& arrivals = columns.number(pipeline.arrival_column);
    std::vector<std::string> ids;
    if (table.find("id") >= 0) {
      ids = table.column("id");
    }
    auto const stages = network::tandem(arrivals, columns, pipeline.stages);

    if (!options.output_dir.empty()) {
      fs::create_directories(options.output_dir);
      for (auto const& stage : stages) {
        auto const path =
            (fs::path(options.output_dir) / (stage.name + ".csv")).string();
        auto file = open_output(path);
        std::ostringstream body;
        io::write_result_csv(body, stage.queue, ids);
        // Extend the standard table with route and post-join columns.
        std::istringstream lines(body.str());
        std::string line;
        std::size_t row = 0;
        while (std::getline(lines, line)) {
          file << line;
          if (row == 0) {
            file << ",route,released";
          } else {
            std::size_t const i = row - 1;
            file << ',' << (stage.routes.empty() ? "" : stage.routes[i]) << ','
                 << io::format_double(stage.released[i]);
          }
          file << '\n';
          ++row;
        }
        close_output(file, path);
      }
    }

    // Mean waits grouped by stage and route.
    out << "stage,route,customers,missed,mean_waiting,mean_join_wait\n";
    for (auto const& stage : stages) {
      struct group {
        std::size_t customers = 0;
        std::size_t missed = 0;
        double wait = 0.0;
        double join_wait = 0.0;
      };
      std::map<std::string, group> groups;
      for (std::size_t i = 0; i != stage.queue.size(); ++i) {
        auto& g = groups[stage.routes.empty() ? "" : stage.routes[i]];
        ++g.customers;
        if (!stage.queue.served(i)) {
          ++g.missed;
          continue;
        }
        g.wait += stage.queue.service_start(i) - stage.queue.arrivals[i];
        g.join_wait += stage.released[i] - stage.queue.departures[i];
      }
      for (auto const& [route, g] : groups) {
        double const served = static_cast<double>(g.customers - g.missed);
        out << stage.name << ',' << route << ',' << g.customers << ','
            << g.missed << ','
            << (served > 0 ? io::format_double(g.wait / served) : "NA") << ','
            << (served > 0 ? io::format_double(g.join_wait / served) : "NA")
            << '\n';
      }
    }
    return int{exit_ok};
  });
}

ValidateReport validate(ValidateOptions const& options) {
  ValidateReport report;
  auto const workload = generate_workload(options.spec);
  report.customers = workload.size();
  if (workload.empty()) {
    return report;
  }
  auto computed = qdc_fixed(workload, options.servers);
  auto const reference = oracle::des_simulate(workload, options.servers);
  if (options.corrupt_engine) {
    computed.departures[workload.size() / 2] *= 1.0 + 1e-6;
  }

  auto lhs = computed.departures;
  auto rhs = reference.departures;
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i != lhs.size(); ++i) {
    double const scale = std::max(std::fabs(rhs[i]), 1e-300);
    report.max_relative_error =
        std::max(report.max_relative_error, std::fabs(lhs[i] - rhs[i]) / scale);
  }
  auto p = computed.assignments;
  auto q = reference.assignments;
  std::sort(p.begin(), p.end());
  std::sort(q.begin(), q.end());
  report.assignments_match = p == q;
  report.passed = report.max_relative_error <= options.tolerance;
  return report;
}

int cmd_validate(ValidateOptions const& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    auto const report = validate(options);
    out << "customers: " << report.customers << '\n'
        << "servers: " << options.servers << '\n'
        << "max relative departure error: "
        << io::format_double(report.max_relative_error) << '\n'
        << "tolerance: " << io::format_double(options.tolerance) << '\n'
        << "server assignments match: "
        << (report.assignments_match ? "yes" : "no") << '\n'
        << (report.passed ? "PASS" : "FAIL") << '\n';
    if (!report.passed) {
      throw validation_failure_error(
          "departures disagree with the event simulation beyond tolerance");
    }
    return int{exit_ok};
  });
}

int cmd_bench(bench::Config const& config, std::string const& output,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto const rows = bench::run(config);
    if (output.empty() || output == "-") {
      bench::write_csv(out, rows);
    } else {
      auto file = open_output(output);
      bench::write_csv(file, rows);
      close_output(file, output);
    }
    return int{exit_ok};
  });
}

int cmd_mmk(MmkOptions const& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    analytic::MmkParameters const p(options.lambda, options.mu,
                                    options.servers);
    out << "rho," << io::format_double(analytic::rho(p)) << '\n'
        << "expected_n," << io::format_double(analytic::mmk_expected_n(p))
        << '\n'
        << "expected_wait,"
        << io::format_double(analytic::mmk_expected_wait(p)) << '\n';
    out << "n,probability\n";
    for (std::uint64_t n = 0; n <= options.max_n; ++n) {
      out << n << ',' << io::format_double(analytic::mmk_p(p, n)) << '\n';
    }
    return int{exit_ok};
  });
}

namespace {

void add_workload_flags(CLI::App* cmd, WorkloadSpec& spec) {
  cmd->add_option("--n", spec.n, "Number of customers");
  cmd->add_option("--lambda", spec.lambda, "Arrival rate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mu", spec.mu, "Service rate")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", spec.seed, "Random seed");
}

} // namespace

int run(int argc, char const* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Queue departure computation"};
  app.require_subcommand(1);

  SampleOptions sample;
  auto* sample_cmd =
      app.add_subcommand("sample", "Write a seeded M/M workload as CSV");
  add_workload_flags(sample_cmd, sample.spec);
  sample_cmd->add_option("--output", sample.output, "Output CSV ('-' = stdout)");

  RunConfig run_cfg;
  std::string input;
  WorkloadSpec generate;
  std::vector<std::string> emit;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Compute departures for a workload");
  auto* input_opt =
      sim_cmd->add_option("--input", input, "Workload CSV (arrival,service)");
  auto* n_opt = sim_cmd->add_option("--n", generate.n,
                                    "Generate this many customers instead");
  sim_cmd->add_option("--lambda", generate.lambda, "Arrival rate")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--mu", generate.mu, "Service rate")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", generate.seed, "Random seed");
  input_opt->excludes(n_opt);
  sim_cmd->add_option("--schedule", run_cfg.schedule,
                      "Schedule JSON (inline or file)");
  sim_cmd->add_option("--output", run_cfg.output, "Per-customer CSV path");
  sim_cmd->add_option("--emit", emit,
                      "Any of summary,table,trajectories,ecdf")
      ->delimiter(',');

  NetworkOptions net;
  auto* net_cmd = app.add_subcommand("network", "Run a feed-forward pipeline");
  net_cmd->add_option("--input", net.input, "Customer CSV")->required();
  net_cmd->add_option("--pipeline,--schedule", net.pipeline,
                      "Pipeline JSON (inline or file)")
      ->required();
  net_cmd->add_option("--output", net.output_dir, "Directory for stage CSVs");

  ValidateOptions val;
  val.spec = WorkloadSpec{10000, 1.0, 1.0 / 0.9, 1};
  auto* val_cmd = app.add_subcommand(
      "validate", "Cross-check against the event simulation");
  add_workload_flags(val_cmd, val.spec);
  val_cmd->add_option("--k,--servers", val.servers, "Number of servers")
      ->check(CLI::PositiveNumber);
  val_cmd->add_option("--tolerance", val.tolerance, "Max relative error");

  bench::Config bench_cfg;
  std::string bench_output;
  auto* bench_cmd = app.add_subcommand("bench", "Median timings per size");
  bench_cmd->add_option("--sizes", bench_cfg.sizes, "Customer counts")
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_cfg.reps, "Repetitions per size");
  bench_cmd->add_option("--k,--servers", bench_cfg.servers, "Number of servers")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--lambda", bench_cfg.lambda, "Arrival rate");
  bench_cmd->add_option("--mu", bench_cfg.mu, "Service rate");
  bench_cmd->add_option("--seed", bench_cfg.seed, "Random seed");
  bench_cmd->add_option("--des-max-n", bench_cfg.des_max_n,
                        "Largest size timed with the event simulation");
  bench_cmd->add_option("--output", bench_output, "CSV path ('-' = stdout)");

  MmkOptions mmk;
  auto* mmk_cmd = app.add_subcommand("mmk", "M/M/K equilibrium results");
  mmk_cmd->add_option("--lambda", mmk.lambda, "Arrival rate");
  mmk_cmd->add_option("--mu", mmk.mu, "Service rate");
  mmk_cmd->add_option("--k,--servers", mmk.servers, "Number of servers");
  mmk_cmd->add_option("--max-n", mmk.max_n, "Largest N for P(N)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  if (*sample_cmd) {
    if (sample.spec.n < 1) {
      err << "error: --n must be at least 1\n";
      return exit_invalid_input;
    }
    return cmd_sample(sample, out, err);
  }
  if (*sim_cmd) {
    if (*input_opt) {
      run_cfg.input = input;
    } else {
      run_cfg.generate = generate;
    }
    if (!emit.empty()) {
      run_cfg.emit = std::set<std::string>(emit.begin(), emit.end());
    }
    return cmd_simulate(run_cfg, out, err);
  }
  if (*net_cmd) {
    return cmd_network(net, out, err);
  }
  if (*val_cmd) {
    return cmd_validate(val, out, err);
  }
  if (*bench_cmd) {
    return cmd_bench(bench_cfg, bench_output, out, err);
  }
  return cmd_mmk(mmk, out, err);
}

} // namespace qdc::cli
