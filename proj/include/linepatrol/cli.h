// Copyright 2026 The linepatrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINEPATROL_CLI_H_
#define LINEPATROL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace linepatrol {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad arguments, unreadable file
inline constexpr int kExitFailure = 2;  // bad contents, solver or check failed

// Subcommands solve, verify, oracle, gen and render. `args` excludes the
// program name. Documents go to `out`, diagnostics to `err`.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace linepatrol

#endif  // LINEPATROL_CLI_H_
