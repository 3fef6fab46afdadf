// Copyright 2026 The boostbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boostbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Runs one command line (without the program name). Returns 0 on
/// success, 1 on usage errors (usage text on `err`), 2 on runtime
/// failures (diagnostic on `err`).
///
///   gen | train | bound | plot
///   exp t-sweep | m-sweep | d-sweep | real-m | real-d | confidence
///
/// `--config FILE` reads `key = value` lines (the format of the manifest
/// every run writes); flags given on the command line take precedence,
/// and `command` / `mode` keys supply the subcommand when none is given.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boostbound::cli
