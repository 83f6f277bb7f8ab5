// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MESHPLAN_TOOLS_CLI_HPP
#define MESHPLAN_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace meshplan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitRefused = 3,
};

// Runs one command line (without the program name). Subcommands: plan,
// sweep, compare, verify, oracle, instance, check.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Column headers of the CSV outputs.
inline constexpr const char* kSweepHeader =
    "axis,value,seed,aps,relays,gateways,total,coverage,link_residual,gateway_balance";
inline constexpr const char* kCompareHeader =
    "variant,grid,seed,instance_hash,aps,relays,gateways,total,coverage,link_residual,gateway_balance";

}  // namespace meshplan::cli

#endif  // MESHPLAN_TOOLS_CLI_HPP
