// Copyright 2026 The NOVA Bundler Authors
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

#ifndef NOVA_CLI_HPP_
#define NOVA_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "nova/file_provider.hpp"

namespace nova::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,     // usage, config or bundle error
  kViolations = 2,  // `check` found at least one violation
};

// Runs one `nova` invocation. `args` excludes the program name. Inputs are read
// through `files`; outputs are written to the filesystem relative to the
// working directory. Machine-readable output goes to `out`, diagnostics to
// `err`.
int run(const std::vector<std::string>& args, const FileProvider& files, std::ostream& out,
        std::ostream& err);

}  // namespace nova::cli

#endif  // NOVA_CLI_HPP_
