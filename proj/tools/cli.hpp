#pragma once

#include "config.hpp"

#include <ostream>

namespace gxray::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,
  exit_numerical = 3,
  exit_io = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_basis(const RunConfig& cfg, std::ostream& out);
int cmd_forward(const RunConfig& cfg, std::ostream& out);
int cmd_invert(const RunConfig& cfg, std::ostream& out);
int cmd_project(const RunConfig& cfg, std::ostream& out);
int cmd_moments(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The disk function used by `forward`: a built-in phantom or w_kappa sum c Zhat.
DiskFunction make_phantom(const RunConfig& cfg);

}  // namespace gxray::cli
