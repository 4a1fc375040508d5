// Copyright 2026 The Transdir Authors.
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

// Error types shared by every module. Each carries the process exit code the
// command-line tool reports for it.

#ifndef TRANSDIR_ERRORS_H_
#define TRANSDIR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace transdir {

enum class ExitCode : int {
  kOk = 0,
  kConfig = 1,
  kData = 2,
  kIo = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Invalid flags, settings or arguments (e.g. k <= 0, a single-class dataset).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ExitCode::kConfig, what) {}
};

// Malformed or inconsistent input records.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::kData, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::kIo, what) {}
};

}  // namespace transdir

#endif  // TRANSDIR_ERRORS_H_
