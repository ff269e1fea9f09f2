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

#ifndef HATLAS_BINARY_IO_H_
#define HATLAS_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "hatlas/error.h"

namespace hatlas {

// Little helpers for the versioned binary files (graph, table, buffer,
// learner). Values are written in host byte order; files are not meant to be
// portable across endianness.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  template <typename T>
  void Put(const T& value) {
    static_assert(std::is_trivially_copyable_v<T>);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  template <typename T>
  void PutSpan(std::span<const T> values) {
    static_assert(std::is_trivially_copyable_v<T>);
    Put<std::uint64_t>(values.size());
    out_.write(reinterpret_cast<const char*>(values.data()),
               static_cast<std::streamsize>(values.size_bytes()));
  }

  void PutString(std::string_view s) {
    Put<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

  void PutVec3(const Eigen::Vector3d& v) {
    Put(v.x());
    Put(v.y());
    Put(v.z());
  }

  void PutVec3s(std::span<const Eigen::Vector3d> values) {
    Put<std::uint64_t>(values.size());
    for (const auto& v : values) PutVec3(v);
  }

  void PutHeader(std::string_view magic, std::uint32_t version) {
    out_.write(magic.data(), static_cast<std::streamsize>(magic.size()));
    Put(version);
  }

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  template <typename T>
  T Get() {
    static_assert(std::is_trivially_copyable_v<T>);
    T value;
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    Check();
    return value;
  }

  template <typename T>
  std::vector<T> GetVector(std::uint64_t max_size = (1ull << 34)) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto n = Get<std::uint64_t>();
    if (n > max_size) throw Error(ErrorKind::kIo, "corrupt file: bad length");
    std::vector<T> values(n);
    in_.read(reinterpret_cast<char*>(values.data()),
             static_cast<std::streamsize>(n * sizeof(T)));
    Check();
    return values;
  }

  std::string GetString() {
    const auto n = Get<std::uint64_t>();
    if (n > (1ull << 30)) throw Error(ErrorKind::kIo, "corrupt file: bad length");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    Check();
    return s;
  }

  Eigen::Vector3d GetVec3() {
    const double x = Get<double>();
    const double y = Get<double>();
    const double z = Get<double>();
    return {x, y, z};
  }

  std::vector<Eigen::Vector3d> GetVec3s(std::uint64_t max_size = (1ull << 30)) {
    const auto n = Get<std::uint64_t>();
    if (n > max_size) throw Error(ErrorKind::kIo, "corrupt file: bad length");
    std::vector<Eigen::Vector3d> values;
    values.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) values.push_back(GetVec3());
    return values;
  }

  // Reads and checks the magic; returns the stored version.
  std::uint32_t GetHeader(std::string_view magic) {
    std::string got(magic.size(), '\0');
    in_.read(got.data(), static_cast<std::streamsize>(got.size()));
    Check();
    if (got != magic) {
      throw Error(ErrorKind::kIo,
                  "unexpected file type (expected " + std::string(magic) + ")");
    }
    return Get<std::uint32_t>();
  }

 private:
  void Check() {
    if (!in_) throw Error(ErrorKind::kIo, "unexpected end of file");
  }

  std::istream& in_;
};

// 64-bit FNV-1a.
class Fnv1a {
 public:
  void Update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t digest() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

std::string HexDigest(std::uint64_t value);

}  // namespace hatlas

#endif  // HATLAS_BINARY_IO_H_
