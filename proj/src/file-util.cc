// src/file-util.cc

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

#include "ivplda/file-util.h"

#include <fstream>
#include <system_error>

#include <unistd.h>

#include "ivplda/common.h"

namespace ivplda {

void WriteFileAtomically(const std::filesystem::path &path,
                         const std::function<void(std::ostream &)> &fill,
                         bool binary) {
  std::filesystem::path tmp = path;
  tmp += Concat(".tmp.", ::getpid());
  try {
    {
      std::ofstream os(tmp, binary ? std::ios::binary | std::ios::trunc
                                   : std::ios::trunc);
      if (!os) throw IoError(Concat("cannot open ", tmp.string(), " for writing"));
      fill(os);
      os.flush();
      if (!os) throw IoError(Concat("write failed for ", tmp.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
      throw IoError(Concat("cannot rename ", tmp.string(), " to ",
                           path.string(), ": ", ec.message()));
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw;
  }
}

void ReadFile(const std::filesystem::path &path,
              const std::function<void(std::istream &)> &consume,
              bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError(Concat("cannot open ", path.string()));
  consume(is);
}

}  // namespace ivplda
