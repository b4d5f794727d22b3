// Copyright 2026 The pgtomo developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared across the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace pgtomo {

/// Raised when input data is structurally malformed (bad JSON, misaligned
/// shapes, out-of-range scalar parameters supplied by the caller).
class InputFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a mathematical precondition fails on structurally valid data
/// (measurement set not informationally complete, probe states that do not
/// span the operator space, non-physical matrices where physical ones are
/// required).
class MathPreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace pgtomo
