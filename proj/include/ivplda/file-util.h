// include/ivplda/file-util.h

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

#ifndef IVPLDA_FILE_UTIL_H_
#define IVPLDA_FILE_UTIL_H_

#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>

namespace ivplda {

/// Writes through `fill` into a temporary sibling of `path`, then renames
/// it over `path`.  On any failure the temporary is removed and `path` is
/// left untouched.
void WriteFileAtomically(const std::filesystem::path &path,
                         const std::function<void(std::ostream &)> &fill,
                         bool binary = true);

/// Opens `path` for reading, throwing IoError when that fails.
void ReadFile(const std::filesystem::path &path,
              const std::function<void(std::istream &)> &consume,
              bool binary = true);

}  // namespace ivplda

#endif  // IVPLDA_FILE_UTIL_H_
