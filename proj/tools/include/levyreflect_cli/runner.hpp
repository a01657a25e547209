#pragma once

#include <iosfwd>
#include <string>

#include "levyreflect_cli/config.hpp"

namespace levyreflect::cli {

// CSV text produced by one run. Nothing is written to disk by execute().
struct RunOutput {
  std::string samples_csv;
  std::string summary_csv;
  std::string report;  // human readable, one line per summary row
};

/// Runs the configured experiment. Library errors propagate as
/// levyreflect::Error.
RunOutput execute(const RunConfig& config);

/// Overshoot experiment at the floor-square barrier; throws WrongBarrier for
/// any other barrier.
RunOutput emit_overshoot_experiment(const RunConfig& config);

/// execute() plus file output to <out>_samples.csv and <out>_summary.csv.
/// Returns 0, or 3 when the library reports a numerical error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Whole program: 0 success, 2 configuration error, 3 numerical error.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levyreflect::cli
