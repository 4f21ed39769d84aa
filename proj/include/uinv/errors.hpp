// Copyright 2026 The uinv authors
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

#include <stdexcept>
#include <string>

namespace uinv {

/// Unknown subsystem label or malformed label set.
struct LabelError : std::invalid_argument {
  explicit LabelError(const std::string& what) : std::invalid_argument(what) {}
};

/// Matrix/layout dimension mismatch.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical precondition violated (Hermiticity, unitarity, determinant, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem exceeds a configured resource cap.
struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

/// Construction self-check failed (carries a residual report in the message).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix factorization broke down inside the solver.
struct FactorizationError : std::runtime_error {
  explicit FactorizationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace uinv
