// Copyright 2026 The revmix Authors.
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

#ifndef REVMIX_ERRORS_H
#define REVMIX_ERRORS_H

#include <stdexcept>
#include <string>

namespace revmix {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Wire site out of range, not ascending, or not nearest-neighbor when required.
struct PlacementError : Error {
    using Error::Error;
};

/// Invalid architecture or wire count for a circuit family.
struct ArchitectureError : Error {
    using Error::Error;
};

/// A permutation with the wrong sign for where it is used.
struct ParityError : Error {
    using Error::Error;
};

/// Malformed text input. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
    ParseError(const std::string &msg, int line = 0, std::string field = {})
        : Error(line > 0 ? "line " + std::to_string(line) + (field.empty() ? "" : ", " + field) + ": " + msg
                         : (field.empty() ? msg : field + ": " + msg)),
          line(line),
          field(std::move(field)) {
    }
    int line;
    std::string field;
};

/// Vectors, states or operators whose (n, k) disagree.
struct DimensionError : Error {
    using Error::Error;
};

/// k > 2^|S| - 2, where the without-replacement extension count breaks down.
struct DegenerateRegimeError : Error {
    using Error::Error;
};

/// A state space or dense matrix larger than the configured cap.
struct SizeCapError : Error {
    using Error::Error;
};

/// An iterative method that did not reach its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Rerouting that would need an anchor outside [n-2].
struct BoundaryError : Error {
    using Error::Error;
};

/// A path map or function bank missing an entry.
struct IncompleteMapError : Error {
    using Error::Error;
};

/// Bad experiment parameters.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace revmix

#endif
