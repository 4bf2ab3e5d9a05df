/*
 * Copyright 2026 The elmddos Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ELMDDOS_TEXT_H_
#define ELMDDOS_TEXT_H_

// Small text helpers shared by the file formats.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elmddos {

// "%.17g": enough digits that parse_double() returns the identical double.
std::string format_double(double v);
// Whole-token parse (surrounding whitespace allowed); nullopt on failure,
// on an empty token, or on trailing garbage. Accepts nan/inf spellings.
std::optional<double> parse_double(std::string_view token);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_view(std::string_view s, char delimiter);

// Writes `contents` to a sibling temporary file and renames it over `path`,
// so readers never observe a partial file. Throws DataError.
void write_file_atomically(const std::string& path, std::string_view contents);

}  // namespace elmddos

#endif  // ELMDDOS_TEXT_H_
