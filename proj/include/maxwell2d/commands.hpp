#pragma once

#include <iosfwd>

#include "maxwell2d/config.hpp"

namespace maxwell2d {

// Exit codes: 0 success, 1 property/acceptance failure, 2 configuration
// error, 3 numerical blow-up.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

int cmd_convergence(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_cfl(const RunConfig& cfg, std::ostream& log);

int dispatch_command(const RunConfig& cfg, std::ostream& log);

}  // namespace maxwell2d
