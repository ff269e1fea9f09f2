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

#include "hatlas/error.h"

namespace hatlas {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDensityViolation: return "DensityViolation";
    case ErrorKind::kEmptyGraph: return "EmptyGraph";
    case ErrorKind::kOutsideAccessibleSpace: return "OutsideAccessibleSpace";
    case ErrorKind::kTooManyVertices: return "TooManyVertices";
    case ErrorKind::kAllInfinite: return "AllInfinite";
    case ErrorKind::kInsufficientTrajectories: return "InsufficientTrajectories";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kEmptyBuffer: return "EmptyBuffer";
    case ErrorKind::kEpisodeOver: return "EpisodeOver";
    case ErrorKind::kConfig: return "Config";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace hatlas
