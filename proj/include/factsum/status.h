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

// Error classes shared by every module. Each class maps onto one CLI exit
// code: usage errors exit 1, data errors exit 2, internal errors exit 3.

#ifndef FACTSUM_STATUS_H_
#define FACTSUM_STATUS_H_

#include <stdexcept>
#include <string>

namespace factsum {

enum class ErrorClass { kUsage = 1, kData = 2, kInternal = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& message)
      : std::runtime_error(message), error_class_(error_class) {}

  ErrorClass error_class() const { return error_class_; }
  int exit_code() const { return static_cast<int>(error_class_); }

 private:
  ErrorClass error_class_;
};

// Bad arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorClass::kUsage, message) {}
};

// Malformed or inconsistent input data. Parse, structural, dataset and
// capacity failures all land here.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorClass::kData, message) {}
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& message, int line)
      : DataError(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class CapacityError : public DataError {
 public:
  using DataError::DataError;
};

// Broken invariant inside the library.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error(ErrorClass::kInternal, message) {}
};

#define FACTSUM_CHECK(cond, msg)                                          \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::factsum::InternalError(std::string("check failed: " #cond   \
                                                 ": ") + (msg));          \
    }                                                                     \
  } while (0)

}  // namespace factsum

#endif  // FACTSUM_STATUS_H_
