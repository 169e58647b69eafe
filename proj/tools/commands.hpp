#pragma once

#include "run_config.hpp"

#include <functional>
#include <iosfwd>

namespace diraclab::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_usage = 2,
  exit_parse = 3,
  exit_band_limit = 4,
  exit_on_spectrum = 5,
  exit_spectral_overlap = 6,
  exit_error = 7,
};

// Each command writes its data (CSV or dump) to `out` and a human-readable
// report to `report`, and returns an ExitCode.

int cmd_verify_algebra(const RunConfig &cfg, std::ostream &report,
                       const DiracMatrixSet &set = standard_dirac());
int cmd_counterexample(const RunConfig &cfg, std::ostream &out, std::ostream &report);
int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &report);

enum class ApplyMode { resolvent, boundary, hamiltonian };
ApplyMode parse_apply_mode(const std::string &name);

struct ApplyRequest {
  ApplyMode mode = ApplyMode::resolvent;
  std::string input;
  bool band_declared = false; // boundary mode requires an explicit band limit
};

/// resolvent: R0(z) f; boundary: R0^{+-}(lambda) f with lambda = first
/// sweep.lambda; hamiltonian: (H0 - z) f.
int cmd_apply(const RunConfig &cfg, const ApplyRequest &req, std::ostream &report);
int cmd_neumann(const RunConfig &cfg, std::ostream &report);
int cmd_norm_estimate(const RunConfig &cfg, std::ostream &report);

/// Runs fn and maps library errors onto exit codes, printing the message.
int run_guarded(const std::function<int()> &fn, std::ostream &err);

} // namespace diraclab::cli
