// Copyright 2026 The sdpgame Authors.
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

// Command-line front end: reduce, bound, gen, verify and solve. Exposed as a
// function so tests can drive it in-process.

#ifndef SDPGAME_CLI_H_
#define SDPGAME_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sdpgame {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCertificate = 2;
inline constexpr int kExitInconclusive = 3;
// The verify command ran but the candidate failed the check.
inline constexpr int kExitRejected = 4;

// args excludes the program name. Reports go to out, errors to err.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace sdpgame

#endif  // SDPGAME_CLI_H_
