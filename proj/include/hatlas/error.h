// Copyright 2026 The Hindsight Atlas Authors
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

#ifndef HATLAS_ERROR_H_
#define HATLAS_ERROR_H_

#include <stdexcept>
#include <string>

namespace hatlas {

// Failure categories raised by the library. The CLI maps these to exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kDensityViolation,
  kEmptyGraph,
  kOutsideAccessibleSpace,
  kTooManyVertices,
  kAllInfinite,
  kInsufficientTrajectories,
  kInfeasible,
  kEmptyBuffer,
  kEpisodeOver,
  kConfig,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hatlas

#endif  // HATLAS_ERROR_H_
