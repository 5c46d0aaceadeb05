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

#ifndef FACTSUM_IO_H_
#define FACTSUM_IO_H_

#include <fstream>
#include <string>

namespace factsum {

// Throws UsageError when the file cannot be opened.
std::ifstream OpenInput(const std::string& path);

std::string ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
void WriteFileAtomic(const std::string& path, const std::string& contents);

void AppendLine(const std::string& path, const std::string& line);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace factsum

#endif  // FACTSUM_IO_H_
