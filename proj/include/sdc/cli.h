//
// Copyright 2026 The SDC Toolkit Authors
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
//

#ifndef SDC_CLI_H_
#define SDC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace sdc {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitVerifyFailed = 3,
};

// Runs one sdctool invocation. `args` excludes the program name. Reports go
// to the --out file, or to `out` when it is absent or "-"; diagnostics go to
// `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Accepts "p/q" with positive integers or a decimal, in (0, 1].
absl::StatusOr<double> ParseFraction(absl::string_view text);

}  // namespace sdc

#endif  // SDC_CLI_H_
