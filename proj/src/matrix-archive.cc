// src/matrix-archive.cc

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

#include "ivplda/matrix-archive.h"

#include <algorithm>

#include "binary-io.h"
#include "ivplda/file-util.h"

namespace ivplda {

using internal::ReadPod;
using internal::WritePod;

namespace {
constexpr uint32_t kVersion = 1;
}

void MatrixArchive::Put(const std::string &name, const Matrix &value) {
  if (Has(name))
    throw InvalidArgument(Concat("duplicate section \"", name, "\""));
  if (!value.allFinite())
    throw InvalidArgument(Concat("non-finite values in section \"", name, "\""));
  sections_.emplace_back(name, value);
}

void MatrixArchive::PutScalar(const std::string &name, double value) {
  Put(name, Matrix::Constant(1, 1, value));
}

bool MatrixArchive::Has(const std::string &name) const {
  return std::any_of(sections_.begin(), sections_.end(),
                     [&](const auto &s) { return s.first == name; });
}

const Matrix &MatrixArchive::Get(const std::string &name) const {
  for (const auto &[key, value] : sections_)
    if (key == name) return value;
  throw FormatError(Concat("missing matrix section \"", name, "\""));
}

double MatrixArchive::GetScalar(const std::string &name) const {
  const Matrix &m = Get(name);
  if (m.rows() != 1 || m.cols() != 1)
    throw FormatError(Concat("section \"", name, "\" is not a scalar"));
  return m(0, 0);
}

void MatrixArchive::Write(std::ostream &os) const {
  internal::WriteMagic(os, "NMAT");
  WritePod<uint32_t>(os, kVersion);
  WritePod<uint32_t>(os, static_cast<uint32_t>(sections_.size()));
  for (const auto &[name, value] : sections_) {
    WritePod<uint32_t>(os, static_cast<uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    WritePod<uint32_t>(os, static_cast<uint32_t>(value.rows()));
    WritePod<uint32_t>(os, static_cast<uint32_t>(value.cols()));
    for (Eigen::Index r = 0; r < value.rows(); ++r)
      for (Eigen::Index c = 0; c < value.cols(); ++c)
        WritePod<double>(os, value(r, c));
  }
}

MatrixArchive MatrixArchive::Read(std::istream &is) {
  internal::ExpectMagic(is, "NMAT");
  const auto version = ReadPod<uint32_t>(is, "version");
  if (version != kVersion)
    throw FormatError(Concat("unsupported NMAT version ", version));
  const auto count = ReadPod<uint32_t>(is, "section count");
  MatrixArchive archive;
  for (uint32_t i = 0; i < count; ++i) {
    const auto name_length = ReadPod<uint32_t>(is, "section name length");
    std::string name = internal::ReadBytes(is, name_length, "section name");
    const auto rows = ReadPod<uint32_t>(is, "rows");
    const auto cols = ReadPod<uint32_t>(is, "cols");
    Matrix value(rows, cols);
    for (uint32_t r = 0; r < rows; ++r)
      for (uint32_t c = 0; c < cols; ++c)
        value(r, c) = ReadPod<double>(is, "matrix payload");
    if (!value.allFinite())
      throw FormatError(Concat("non-finite values in section \"", name, "\""));
    if (archive.Has(name))
      throw FormatError(Concat("duplicate section \"", name, "\""));
    archive.sections_.emplace_back(std::move(name), std::move(value));
  }
  return archive;
}

void MatrixArchive::WriteFile(const std::filesystem::path &path) const {
  WriteFileAtomically(path, [this](std::ostream &os) { Write(os); });
}

MatrixArchive MatrixArchive::ReadFile(const std::filesystem::path &path) {
  MatrixArchive archive;
  ivplda::ReadFile(path, [&](std::istream &is) { archive = Read(is); });
  return archive;
}

}  // namespace ivplda
