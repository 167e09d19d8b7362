#include "aamsim/report.h"

#include <fstream>
#include <ostream>
#include <string>

#include "aamsim/errors.h"
#include "aamsim/occupancy.h"
#include "aamsim/server.h"
#include "aamsim/traffic.h"

namespace aamsim {
namespace {

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void WriteSummary(std::ostream& out, const Scenario& scenario,
                  const PipelineResult& result) {
  const PipelineSummary& s = result.summary;
  out << "scenario = " << scenario.name << '\n'
      << "seed = " << scenario.seed << '\n'
      << "sqf_enabled = " << (scenario.sqf_enabled ? "true" : "false") << '\n'
      << "aam_enabled = " << (scenario.aam_enabled ? "true" : "false") << '\n'
      << "packets = " << s.packets << '\n'
      << "benign_packets = " << s.benign_packets << '\n'
      << "attack_packets = " << s.attack_packets << '\n'
      << "dropped = " << s.dropped << '\n'
      << "benign_dropped = " << s.benign_dropped << '\n'
      << "attack_dropped = " << s.attack_dropped << '\n'
      << "forwarded = " << s.forwarded << '\n'
      << "tested = " << s.tested << '\n'
      << "served_after_horizon = " << s.served_after_horizon << '\n'
      << "windows_tested = " << s.windows_tested << '\n'
      << "windows_under_attack = " << s.windows_under_attack << '\n'
      << "attack_verdicts = " << s.attack_verdicts << '\n'
      << "alarms = " << s.alarms << '\n'
      << "sqf_peak_queue = " << s.sqf_peak_queue << '\n'
      << "sqf_peak_time_s = " << FormatSeconds(s.sqf_peak_time) << '\n'
      << "server_peak_queue = " << s.server_peak_queue << '\n'
      << "server_mean_queue = " << s.server_mean_queue << '\n'
      << "server_max_wait_s = " << FormatSeconds(s.server_max_wait) << '\n'
      << "mean_service_s = " << s.mean_service_s << '\n'
      << "last_departure_s = " << FormatSeconds(s.last_departure) << '\n';
  for (std::size_t k = 0; k < s.floods.size(); ++k) {
    const FloodOutcome& f = s.floods[k];
    out << "flood." << k << ".realized_x = " << f.realized_x << '\n'
        << "flood." << k << ".ex_estimate = " << f.ex_estimate << '\n'
        << "flood." << k << ".m_at_alarm = " << f.m_at_alarm << '\n';
  }
  for (const std::string& w : result.warnings) out << "warning = " << w << '\n';
}

void WriteRunOutputs(const std::filesystem::path& dir, const Scenario& scenario,
                     const PipelineResult& result) {
  std::filesystem::create_directories(dir);
  {
    auto out = OpenOut(dir / "trace.csv");
    WriteTraceCsv(out, result.packets);
  }
  {
    auto out = OpenOut(dir / "sqf_timeline.csv");
    WriteTimelineCsv(out, result.sqf_timeline);
  }
  {
    auto out = OpenOut(dir / "server_trace.csv");
    WriteServerTraceCsv(out, result.server);
  }
  {
    auto out = OpenOut(dir / "server_timeline.csv");
    WriteTimelineCsv(out, result.server_timeline);
  }
  {
    auto out = OpenOut(dir / "aam_events.csv");
    WriteEventLogCsv(out, result.events);
  }
  {
    auto out = OpenOut(dir / "summary.txt");
    WriteSummary(out, scenario, result);
  }
  {
    auto out = OpenOut(dir / "plot.gp");
    out << "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'time (s)'\n"
           "set ylabel 'packets'\n"
           "set terminal pngcairo size 1000,700\n"
           "set output 'queues.png'\n"
           "set multiplot layout 2,1\n"
           "set title 'forwarder input queue'\n"
           "plot 'sqf_timeline.csv' using 1:2 with steps\n"
           "set title 'detection server queue'\n"
           "plot 'server_timeline.csv' using 1:2 with steps\n"
           "unset multiplot\n";
  }
}

}  // namespace aamsim
