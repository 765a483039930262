#ifndef qdc_io_hpp
#define qdc_io_hpp

#include <qdc/metrics.hpp>
#include <qdc/network.hpp>
#include <qdc/schedule.hpp>
#include <qdc/types.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qdc::io {

/// Raw CSV: a header row and string cells. Fields may be double-quoted,
/// with "" standing for a literal quote.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position, or -1 when absent.
  int find(std::string_view name) const noexcept;
  std::vector<std::string> column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(std::string const& path);

/// 17 significant digits, enough for every double to round-trip; +inf
/// prints as "inf".
std::string format_double(double v);
double parse_double(std::string_view text, std::string const& context);

/**
 * Workload from columns "arrival" and "service" plus an optional "id".
 * An entirely empty input is an empty workload.
 */
WorkloadTable workload_from_csv(CsvTable const& table);

void write_workload_csv(std::ostream& out, WorkloadTable const& workload);

/// Per-customer table: id,arrival,service,departure,waiting,system_time,server.
/// Missed customers get inf times and server "NA".
void write_result_csv(std::ostream& out, QueueResult const& result,
                      std::vector<std::string> const& ids = {});
QueueResult result_from_csv(CsvTable const& table);

void write_trajectory_csv(std::ostream& out, StepTrajectory const& traj);
void write_ecdf_csv(std::ostream& out, Ecdf const& arrivals,
                    Ecdf const& departures);

/// Three significant figures, no exponent for ordinary magnitudes.
std::string format_3sig(double v);

/// Summary block in the label-then-value layout.
void write_summary(std::ostream& out, SummaryStats const& stats);
/// Summary for a run in which no customer was served.
void write_empty_summary(std::ostream& out, std::size_t total,
                         std::size_t missed);

/**
 * Schedule objects:
 *   {"type":"fixed","k":2}
 *   {"type":"stepfun","x":[600,780],"y":[10,12,8]}
 *   {"type":"list","servers":[{"x":[5],"y":[0,1]}, ...]}
 * Errors name the offending JSON path, rooted at `path`.
 */
ServerSchedule schedule_from_json(nlohmann::json const& j,
                                  std::string const& path = "$");
nlohmann::json schedule_to_json(ServerSchedule const& schedule);

/// Parses inline JSON when the text starts with '{', otherwise reads a file.
nlohmann::json load_json(std::string const& text_or_path);

struct Pipeline {
  std::string arrival_column = "arrival";
  std::vector<network::StageSpec> stages;
};

/**
 * {"arrival": "arrive_imm",
 *  "stages": [
 *    {"name": "immigration", "service": "service_imm",
 *     "route": "route_imm",
 *     "branches": {"manual": <schedule>, "smart gate": <schedule>},
 *     "join": "bag_time"},
 *    {"name": "customs", "service": "service_c", "schedule": <schedule>}]}
 */
Pipeline pipeline_from_json(nlohmann::json const& j);

network::ColumnSet columns_from_csv(CsvTable const& table);

} // namespace qdc::io

#endif // qdc_io_hpp
