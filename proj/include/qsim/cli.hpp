// Copyright 2026 The qsim Authors
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
#include <string>
#include <utility>
#include <vector>

namespace qsim::cli {

/// Runs one command line (program name excluded). Returns 0 on success, 1 on
/// domain errors and 2 on usage errors; diagnostics go to `err`.
int dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err);

/// Subcommand name and the topic it reproduces.
std::vector<std::pair<std::string, std::string>> manifest_entries();

} // namespace qsim::cli
