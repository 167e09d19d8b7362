#ifndef AAMSIM_REPORT_H_
#define AAMSIM_REPORT_H_

#include <filesystem>
#include <iosfwd>

#include "aamsim/pipeline.h"

namespace aamsim {

void WriteSummary(std::ostream& out, const Scenario& scenario,
                  const PipelineResult& result);

// Writes trace.csv, sqf_timeline.csv, server_trace.csv,
// server_timeline.csv, aam_events.csv, summary.txt and plot.gp into dir.
void WriteRunOutputs(const std::filesystem::path& dir, const Scenario& scenario,
                     const PipelineResult& result);

}  // namespace aamsim

#endif  // AAMSIM_REPORT_H_
