// include/ivplda/matrix-archive.h

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

#ifndef IVPLDA_MATRIX_ARCHIVE_H_
#define IVPLDA_MATRIX_ARCHIVE_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ivplda/common.h"

namespace ivplda {

/// Ordered collection of named double-precision matrices; the on-disk
/// container for every trained model (TV, LDA, SUV, GPLDA).
///
/// Layout, all integers u32 little-endian:
///   "NMAT" | version=1 | section count |
///   per section: name length | name bytes (UTF-8) | rows | cols |
///                rows*cols float64 little-endian, row-major
class MatrixArchive {
 public:
  // Names are unique and values finite; violations throw InvalidArgument.
  void Put(const std::string &name, const Matrix &value);
  void PutScalar(const std::string &name, double value);

  bool Has(const std::string &name) const;
  // Throws FormatError naming the missing section.
  const Matrix &Get(const std::string &name) const;
  double GetScalar(const std::string &name) const;

  const std::vector<std::pair<std::string, Matrix>> &sections() const {
    return sections_;
  }

  void Write(std::ostream &os) const;
  static MatrixArchive Read(std::istream &is);

  void WriteFile(const std::filesystem::path &path) const;
  static MatrixArchive ReadFile(const std::filesystem::path &path);

 private:
  std::vector<std::pair<std::string, Matrix>> sections_;
};

}  // namespace ivplda

#endif  // IVPLDA_MATRIX_ARCHIVE_H_
