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

#include "hatlas/random.h"

#include <iomanip>
#include <sstream>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"

namespace hatlas {

std::string SerializeRng(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng DeserializeRng(const std::string& text) {
  std::istringstream is(text);
  Rng rng;
  is >> rng;
  if (!is) throw Error(ErrorKind::kIo, "corrupt RNG state");
  return rng;
}

std::string HexDigest(std::uint64_t value) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << value;
  return os.str();
}

}  // namespace hatlas
