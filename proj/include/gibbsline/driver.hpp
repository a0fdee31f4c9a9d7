#ifndef GIBBSLINE_DRIVER_HPP
#define GIBBSLINE_DRIVER_HPP

#include "gibbsline/report.hpp"
#include "gibbsline/thermo.hpp"

namespace gibbsline {

struct RunResult {
  ReportEnvelope envelope;
  // 0: all checks satisfied; 1: operational error; 2: bound violated or refused
  int exit_code = 0;
};

/// Dispatches one of spectrum | measure | converge | mixing | entropy |
/// check-bounds against a validated config.
RunResult run_subcommand(const RunConfig& cfg, const std::string& name);

}  // namespace gibbsline

#endif  // GIBBSLINE_DRIVER_HPP
