#pragma once

#include <iosfwd>
#include <string>

#include "friedrichs/config.hpp"

namespace friedrichs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitTolerance = 3;

// Runs a named experiment and writes its artifacts into out_dir.
// Returns kExitOk or kExitTolerance; validation problems throw PreconditionError.
int run_experiment(const std::string& name, const Config& cfg, const std::string& out_dir, bool check_only,
                   std::ostream& log);

// Exception-to-exit-code wrapper used by the command-line tool.
int run_experiment_guarded(const std::string& name, const std::string& config_path, const std::string& out_dir,
                           bool check_only, std::ostream& log);

}  // namespace friedrichs
