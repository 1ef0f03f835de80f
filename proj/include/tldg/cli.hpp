// Copyright 2026 The TLDG Authors.
//
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

#ifndef TLDG_CLI_HPP_
#define TLDG_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace tldg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;  // `check` false or `suite` failure
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUsage = 3;

// Entry point of the `tldg` tool. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace tldg

#endif  // TLDG_CLI_HPP_
