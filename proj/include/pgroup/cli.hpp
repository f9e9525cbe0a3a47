// Copyright 2026 The pgroup Authors
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

#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pgroup {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;  // bad flag, unreadable or malformed input
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitInvalidColoring = 4;

/**
 * Runs the `pgroup` command line in-process. `args` excludes the program
 * name. Subcommands: group, compare, histogram, export-graph. Reports go to
 * `out` unless redirected with --out; diagnostics go to `err`.
 */
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pgroup
