// Copyright 2026 The walkqed Authors
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

#ifndef WALKQED_CLI_H
#define WALKQED_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace walkqed {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command-line front end. `args` excludes the program name.
/// Returns 0 on success, 1 on computational or verification failure and 2 on
/// usage or configuration errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace walkqed

#endif
