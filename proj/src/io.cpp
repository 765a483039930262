#include <qdc/io.hpp>

#include <qdc/error.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace qdc::io {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  auto const blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) {
    s.remove_prefix(1);
  }
  while (!s.empty() && blank(s.back())) {
    s.remove_suffix(1);
  }
  return s;
}

std::string quote_if_needed(std::string const& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

int CsvTable::find(std::string_view name) const noexcept {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::vector<std::string> CsvTable::column(std::string_view name) const {
  int const c = find(name);
  if (c < 0) {
    throw invalid_input_error("missing column '" + std::string(name) + "'");
  }
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (auto const& row : rows) {
    out.push_back(row[static_cast<std::size_t>(c)]);
  }
  return out;
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  int const c = find(name);
  if (c < 0) {
    throw invalid_input_error("missing column '" + std::string(name) + "'");
  }
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r != rows.size(); ++r) {
    out.push_back(parse_double(rows[r][static_cast<std::size_t>(c)],
                               "column '" + std::string(name) + "' row " +
                                   std::to_string(r + 1)));
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  std::string const text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;

  auto end_field = [&] {
    record.push_back(field_was_quoted ? field : std::string(trim(field)));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    bool const blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      records.push_back(std::move(record));
    }
    record.clear();
  };

  for (std::size_t i = 0; i != text.size(); ++i) {
    char const c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw invalid_input_error("CSV ends inside a quoted field");
  }
  if (!field.empty() || !record.empty()) {
    end_record();
  }

  CsvTable table;
  if (records.empty()) {
    return table;
  }
  table.header = std::move(records.front());
  for (std::size_t r = 1; r != records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw invalid_input_error(
          "CSV row " + std::to_string(r) + " has " +
          std::to_string(records[r].size()) + " fields, header has " +
          std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open '" + path + "' for reading");
  }
  return read_csv(in);
}

std::string format_double(double v) {
  if (v == infinity) {
    return "inf";
  }
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, end);
}

double parse_double(std::string_view text, std::string const& context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw invalid_input_error(context + ": '" + std::string(text) +
                              "' is not a number");
  }
  return v;
}

WorkloadTable workload_from_csv(CsvTable const& table) {
  if (table.header.empty()) {
    return {};
  }
  std::vector<std::string> ids;
  if (table.find("id") >= 0) {
    ids = table.column("id");
  }
  return WorkloadTable(table.numeric_column("arrival"),
                       table.numeric_column("service"), std::move(ids));
}

void write_workload_csv(std::ostream& out, WorkloadTable const& workload) {
  out << "id,arrival,service\n";
  auto const a = workload.arrivals();
  auto const s = workload.services();
  for (std::size_t i = 0; i != workload.size(); ++i) {
    out << quote_if_needed(workload.id(i)) << ',' << format_double(a[i]) << ','
        << format_double(s[i]) << '\n';
  }
}

void write_result_csv(std::ostream& out, QueueResult const& result,
                      std::vector<std::string> const& ids) {
  out << "id,arrival,service,departure,waiting,system_time,server\n";
  for (std::size_t i = 0; i != result.size(); ++i) {
    double const a = result.arrivals[i];
    double const s = result.services[i];
    double const d = result.departures[i];
    out << quote_if_needed(ids.empty() ? std::to_string(i + 1) : ids[i]) << ','
        << format_double(a) << ',' << format_double(s) << ','
        << format_double(d) << ',';
    if (result.served(i)) {
      out << format_double(d - a - s) << ',' << format_double(d - a) << ','
          << result.assignments[i];
    } else {
      out << "inf,inf,NA";
    }
    out << '\n';
  }
}

QueueResult result_from_csv(CsvTable const& table) {
  QueueResult r;
  if (table.header.empty()) {
    return r;
  }
  r.arrivals = table.numeric_column("arrival");
  r.services = table.numeric_column("service");
  r.departures = table.numeric_column("departure");
  for (auto const& cell : table.column("server")) {
    if (cell == "NA") {
      r.assignments.push_back(no_server);
    } else {
      r.assignments.push_back(
          static_cast<server_id>(parse_double(cell, "server column")));
    }
  }
  return r;
}

void write_trajectory_csv(std::ostream& out, StepTrajectory const& traj) {
  out << "time,level\n";
  for (std::size_t j = 0; j != traj.times.size(); ++j) {
    out << format_double(traj.times[j]) << ',' << traj.levels[j] << '\n';
  }
}

void write_ecdf_csv(std::ostream& out, Ecdf const& arrivals,
                    Ecdf const& departures) {
  out << "series,time,fraction\n";
  for (std::size_t j = 0; j != arrivals.values.size(); ++j) {
    out << "arrival," << format_double(arrivals.values[j]) << ','
        << format_double(arrivals.fractions[j]) << '\n';
  }
  for (std::size_t j = 0; j != departures.values.size(); ++j) {
    out << "departure," << format_double(departures.values[j]) << ','
        << format_double(departures.fractions[j]) << '\n';
  }
}

std::string format_3sig(double v) {
  if (!std::isfinite(v)) {
    return std::isnan(v) ? "NaN" : (v > 0 ? "Inf" : "-Inf");
  }
  if (v == 0.0) {
    return "0";
  }
  int const magnitude = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  if (magnitude < -4 || magnitude >= 15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
  }
  double const scale = std::pow(10.0, magnitude - 2);
  double const rounded = std::round(v / scale) * scale;
  int const decimals = std::max(0, 2 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') {
      s.pop_back();
    }
    if (s.back() == '.') {
      s.pop_back();
    }
  }
  return s;
}

void write_summary(std::ostream& out, SummaryStats const& stats) {
  out << "Total customers:\n " << stats.total_customers << '\n'
      << "Missed customers:\n " << stats.missed_customers << '\n'
      << "Mean waiting time:\n " << format_3sig(stats.mean_waiting) << '\n'
      << "Mean response time:\n " << format_3sig(stats.mean_response) << '\n'
      << "Utilization factor:\n " << format_3sig(stats.utilization_factor)
      << '\n'
      << "Mean queue length:\n " << format_3sig(stats.mean_queue_length)
      << '\n'
      << "Mean number of customers in system:\n "
      << format_3sig(stats.mean_in_system) << '\n';
}

void write_empty_summary(std::ostream& out, std::size_t total,
                         std::size_t missed) {
  out << "Total customers:\n " << total << '\n'
      << "Missed customers:\n " << missed << '\n'
      << "Mean waiting time:\n NA\n"
      << "Mean response time:\n NA\n"
      << "Utilization factor:\n NA\n"
      << "Mean queue length:\n NA\n"
      << "Mean number of customers in system:\n NA\n";
}

namespace {

json const& member(json const& j, char const* key, std::string const& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw invalid_input_error(path + ": missing member '" + key + "'");
  }
  return j.at(key);
}

std::vector<double> number_array(json const& j, std::string const& path) {
  if (!j.is_array()) {
    throw invalid_input_error(path + ": expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i != j.size(); ++i) {
    if (!j[i].is_number()) {
      throw invalid_input_error(path + "[" + std::to_string(i) +
                                "]: expected a number");
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

template <typename Int>
std::vector<Int> integer_array(json const& j, std::string const& path,
                               std::uint64_t max_value) {
  if (!j.is_array()) {
    throw invalid_input_error(path + ": expected an array of integers");
  }
  std::vector<Int> out;
  for (std::size_t i = 0; i != j.size(); ++i) {
    auto const& v = j[i];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        v.get<std::uint64_t>() > max_value) {
      throw invalid_input_error(path + "[" + std::to_string(i) +
                                "]: expected an integer in [0, " +
                                std::to_string(max_value) + "]");
    }
    out.push_back(static_cast<Int>(v.get<std::uint64_t>()));
  }
  return out;
}

std::string string_member(json const& j, char const* key,
                          std::string const& path) {
  auto const& v = member(j, key, path);
  if (!v.is_string()) {
    throw invalid_input_error(path + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

template <typename Fn>
auto with_path(std::string const& path, Fn&& fn) {
  try {
    return fn();
  } catch (invalid_input_error const& e) {
    std::string const what = e.what();
    if (what.rfind(path, 0) == 0) {
      throw;
    }
    throw invalid_input_error(path + ": " + what);
  }
}

} // namespace

ServerSchedule schedule_from_json(json const& j, std::string const& path) {
  std::string const type = string_member(j, "type", path);
  if (type == "fixed") {
    auto const& k = member(j, "k", path);
    if (!k.is_number_integer() || k.get<std::int64_t>() < 1 ||
        k.get<std::int64_t>() > 0xffffffffLL) {
      throw invalid_input_error(path + ".k: expected a positive integer");
    }
    return FixedServers(static_cast<std::uint32_t>(k.get<std::int64_t>()));
  }
  if (type == "stepfun") {
    auto x = number_array(member(j, "x", path), path + ".x");
    auto y = integer_array<std::uint32_t>(member(j, "y", path), path + ".y",
                                          0xffffffffULL);
    return with_path(path, [&] {
      return ServerSchedule(ServerStepFunction(std::move(x), std::move(y)));
    });
  }
  if (type == "list") {
    auto const& servers = member(j, "servers", path);
    if (!servers.is_array()) {
      throw invalid_input_error(path + ".servers: expected an array");
    }
    std::vector<ServerAvailability> list;
    for (std::size_t k = 0; k != servers.size(); ++k) {
      auto const where = path + ".servers[" + std::to_string(k) + "]";
      ServerAvailability s;
      s.knots = number_array(member(servers[k], "x", where), where + ".x");
      s.open = integer_array<std::uint8_t>(member(servers[k], "y", where),
                                           where + ".y", 1);
      list.push_back(std::move(s));
    }
    return with_path(path, [&] {
      return ServerSchedule(ServerAvailabilityList(std::move(list)));
    });
  }
  throw invalid_input_error(path + ".type: unknown schedule type '" + type +
                            "' (expected fixed, stepfun or list)");
}

json schedule_to_json(ServerSchedule const& schedule) {
  struct visitor {
    json operator()(FixedServers const& f) const {
      return {{"type", "fixed"}, {"k", f.count}};
    }
    json operator()(ServerStepFunction const& s) const {
      return {{"type", "stepfun"},
              {"x", std::vector<double>(s.knots().begin(), s.knots().end())},
              {"y", std::vector<std::uint32_t>(s.counts().begin(),
                                               s.counts().end())}};
    }
    json operator()(ServerAvailabilityList const& l) const {
      json servers = json::array();
      for (auto const& s : l.servers()) {
        servers.push_back({{"x", s.knots}, {"y", s.open}});
      }
      return {{"type", "list"}, {"servers", servers}};
    }
  };
  return std::visit(visitor{}, schedule);
}

json load_json(std::string const& text_or_path) {
  auto const body = trim(text_or_path);
  try {
    if (!body.empty() && body.front() == '{') {
      return json::parse(body);
    }
    std::ifstream in(text_or_path);
    if (!in) {
      throw io_error("cannot open '" + text_or_path + "' for reading");
    }
    return json::parse(in);
  } catch (json::parse_error const& e) {
    throw invalid_input_error(std::string("malformed JSON: ") + e.what());
  }
}

Pipeline pipeline_from_json(json const& j) {
  if (!j.is_object()) {
    throw invalid_input_error("$: pipeline must be a JSON object");
  }
  Pipeline p;
  if (j.contains("arrival")) {
    p.arrival_column = string_member(j, "arrival", "$");
  }
  auto const& stages = member(j, "stages", "$");
  if (!stages.is_array() || stages.empty()) {
    throw invalid_input_error("$.stages: expected a non-empty array");
  }
  for (std::size_t i = 0; i != stages.size(); ++i) {
    auto const path = "$.stages[" + std::to_string(i) + "]";
    auto const& st = stages[i];
    network::StageSpec spec;
    spec.name = string_member(st, "name", path);
    spec.service_column = string_member(st, "service", path);
    bool const routed = st.is_object() && st.contains("route");
    bool const single = st.is_object() && st.contains("schedule");
    if (routed == single) {
      throw invalid_input_error(path +
                                ": give exactly one of 'schedule' or 'route'");
    }
    if (single) {
      spec.servers = schedule_from_json(st.at("schedule"), path + ".schedule");
    } else {
      network::Routing routing;
      routing.column = string_member(st, "route", path);
      auto const& branches = member(st, "branches", path);
      if (!branches.is_object() || branches.empty()) {
        throw invalid_input_error(path +
                                  ".branches: expected a non-empty object");
      }
      for (auto const& [label, schedule] : branches.items()) {
        routing.branches.emplace(
            label, schedule_from_json(schedule, path + ".branches." + label));
      }
      spec.servers = std::move(routing);
    }
    if (st.contains("join")) {
      spec.join_column = string_member(st, "join", path);
    }
    p.stages.push_back(std::move(spec));
  }
  return p;
}

network::ColumnSet columns_from_csv(CsvTable const& table) {
  network::ColumnSet set;
  for (auto const& name : table.header) {
    auto cells = table.column(name);
    std::vector<double> values;
    values.reserve(cells.size());
    bool numeric = true;
    for (auto const& cell : cells) {
      try {
        values.push_back(parse_double(cell, name));
      } catch (invalid_input_error const&) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      set.numeric.emplace(name, std::move(values));
    }
    set.text.emplace(name, std::move(cells));
  }
  return set;
}

} // namespace qdc::io
