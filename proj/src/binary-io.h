// src/binary-io.h

// Copyright 2026  The ivplda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Little-endian primitive readers/writers shared by the container formats.

#ifndef IVPLDA_SRC_BINARY_IO_H_
#define IVPLDA_SRC_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "ivplda/common.h"

namespace ivplda::internal {

template <typename T>
T ToLittleEndian(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (size_t i = 0; i < sizeof(T) / 2; ++i)
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

template <typename T>
void WritePod(std::ostream &os, T value) {
  value = ToLittleEndian(value);
  os.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

// Throws FormatError with `what` if the stream runs dry.
template <typename T>
T ReadPod(std::istream &is, const char *what) {
  T value;
  is.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (is.gcount() != static_cast<std::streamsize>(sizeof(T)))
    throw FormatError(Concat("truncated file while reading ", what));
  return ToLittleEndian(value);
}

inline void WriteMagic(std::ostream &os, const char (&magic)[5]) {
  os.write(magic, 4);
}

inline void ExpectMagic(std::istream &is, const char (&magic)[5]) {
  char got[4] = {0, 0, 0, 0};
  is.read(got, 4);
  if (is.gcount() != 4 || std::memcmp(got, magic, 4) != 0)
    throw FormatError(Concat("bad magic: expected \"", magic, "\""));
}

inline std::string ReadBytes(std::istream &is, uint32_t length,
                             const char *what) {
  std::string bytes(length, '\0');
  is.read(bytes.data(), length);
  if (is.gcount() != static_cast<std::streamsize>(length))
    throw FormatError(Concat("truncated file while reading ", what));
  return bytes;
}

}  // namespace ivplda::internal

#endif  // IVPLDA_SRC_BINARY_IO_H_
