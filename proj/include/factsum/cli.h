// Copyright 2026 The Factsum Authors.
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

// Batch command-line front end. Commands:
//
//   segment    dataset (JSON lines)        -> facts file
//   oracle     facts file                  -> labels file (+ oracle ROUGE)
//   train      labels file                 -> checkpoint (+ loss curve)
//   summarize  facts or labels file        -> summaries file
//   evaluate   summaries + facts file      -> ROUGE report
//   positions  summaries + facts file      -> position histogram
//   stats      dataset                     -> granularity statistics
//   mask       facts file                  -> 0/1 attention mask dump
//
// Every command that gets past argument parsing appends one manifest line
// (JSON) describing the run. Exit codes: 0 success, 1 usage, 2 data
// (including skipped records), 3 internal.

#ifndef FACTSUM_CLI_H_
#define FACTSUM_CLI_H_

#include <ostream>

namespace factsum {

// Environment variable naming a config file, consulted when --config is
// absent.
inline constexpr char kConfigEnvVar[] = "FACTSUM_CONFIG";

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace factsum

#endif  // FACTSUM_CLI_H_
