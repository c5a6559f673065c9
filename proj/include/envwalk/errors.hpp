// Copyright 2026 The envwalk Authors

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
 * Exception types shared by all envwalk modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace envwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid model or run configuration (even ring size, non-unit vectors...).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Operands whose shapes do not fit together.
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Eigensolver failure or a numerically invalid intermediate result.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// A dense construction that would exceed its size guard.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Least-squares fit that cannot be carried out (no decay, degenerate data).
class FitError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/**
 * No usable fit window. The candidate bounds found by the window rule are
 * kept so callers can report them or fall back to a manual window.
 */
class FitWindowError : public FitError {
  public:
    FitWindowError(const std::string &what, long first, long last)
        : FitError(what), first_(first), last_(last) {}
    [[nodiscard]] long candidate_first() const noexcept { return first_; }
    [[nodiscard]] long candidate_last() const noexcept { return last_; }

  private:
    long first_;
    long last_;
};

/// File or stream failure.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace envwalk
