// Copyright 2026 The pauliprop authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pauliprop {

/// Malformed input: bad file schema, bad flag value, out-of-range parameter.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string &msg) : std::runtime_error(msg) {}
};

/// The instance violates an engine precondition (e.g. a noise channel whose
/// saturating axis is not Z).
class AdmissibilityError : public std::runtime_error {
 public:
  explicit AdmissibilityError(const std::string &msg)
      : std::runtime_error(msg) {}
};

/// A configured budget (branch count, memory) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace pauliprop
