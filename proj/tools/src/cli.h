// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_TOOLS_CLI_H
#define QWALK_TOOLS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

/// Exit codes.
constexpr int kOk = 0;
constexpr int kBadArgs = 1;
constexpr int kIndeterminate = 2;

/// Runs one command line (without the program name). Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// 64-bit FNV-1a, used for manifest hashes.
uint64_t fnv1a64(const std::string &bytes);

}  // namespace qwalk::cli

#endif
