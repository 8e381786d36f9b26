/*
 * Copyright (c) 2026, The readmap Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace readmap {

enum class ErrorCode {
  invalid_argument,
  parse,
  io,
  domain,
  not_found,
  timeout,
};

const char* to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Non-fatal diagnostics collected while a stage runs.
using Warnings = std::vector<std::string>;

}  // namespace readmap
