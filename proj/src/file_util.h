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

// File helpers shared by the library sources. Not installed.

#ifndef TRANSDIR_SRC_FILE_UTIL_H_
#define TRANSDIR_SRC_FILE_UTIL_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace transdir::internal {

// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

// Creates parent directories as needed. Throws IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

void ensure_directory(const std::filesystem::path& dir);

// Calls `fn(line, line_number)` for each line (1-based), without the
// trailing newline.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::string_view, int)>& fn);

std::vector<std::string> read_lines(const std::filesystem::path& path);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace transdir::internal

#endif  // TRANSDIR_SRC_FILE_UTIL_H_
