// tests/matrix-archive-test.cc

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

#include <sstream>

#include "doctest.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/random.h"
#include "test-util.h"

using namespace ivplda;

TEST_CASE("sections round-trip exactly and keep their order") {
  Engine engine = MakeEngine({21});
  MatrixArchive archive;
  const Matrix a = testing::RandomMatrix(engine, 3, 5);
  const Matrix b = testing::RandomMatrix(engine, 1, 1);
  archive.Put("zeta", a);
  archive.Put("alpha", b);
  archive.PutScalar("ridge", 1e-9);
  std::stringstream ss;
  archive.Write(ss);
  const MatrixArchive back = MatrixArchive::Read(ss);
  REQUIRE(back.sections().size() == 3);
  CHECK(back.sections()[0].first == "zeta");
  CHECK(back.sections()[1].first == "alpha");
  CHECK(back.Get("zeta") == a);
  CHECK(back.Get("alpha") == b);
  CHECK(back.GetScalar("ridge") == 1e-9);
}

TEST_CASE("missing and duplicate sections are errors") {
  MatrixArchive archive;
  archive.Put("m", Matrix::Zero(2, 2));
  CHECK_THROWS_AS(archive.Put("m", Matrix::Zero(2, 2)), InvalidArgument);
  CHECK_THROWS_AS(archive.Get("T"), FormatError);
  CHECK_THROWS_AS(archive.GetScalar("m"), FormatError);
}

TEST_CASE("non-finite entries are rejected") {
  MatrixArchive archive;
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(archive.Put("m", m), InvalidArgument);
}

TEST_CASE("corrupt archives are format errors") {
  MatrixArchive archive;
  archive.Put("m", Matrix::Ones(4, 4));
  std::stringstream ss;
  archive.Write(ss);
  const std::string bytes = ss.str();
  {
    std::stringstream cut(bytes.substr(0, bytes.size() - 5));
    CHECK_THROWS_AS(MatrixArchive::Read(cut), FormatError);
  }
  {
    std::string bad = bytes;
    bad[1] = 'Q';
    std::stringstream in(bad);
    CHECK_THROWS_AS(MatrixArchive::Read(in), FormatError);
  }
}

TEST_CASE("file writes replace the target atomically") {
  testing::TempDir dir;
  MatrixArchive first, second;
  first.Put("x", Matrix::Ones(1, 1));
  second.Put("y", Matrix::Zero(2, 1));
  first.WriteFile(dir / "a.nmat");
  second.WriteFile(dir / "a.nmat");
  const MatrixArchive back = MatrixArchive::ReadFile(dir / "a.nmat");
  CHECK(back.Has("y"));
  CHECK(!back.Has("x"));
  int files = 0;
  for ([[maybe_unused]] const auto &entry :
       std::filesystem::directory_iterator(dir.path()))
    ++files;
  CHECK(files == 1);
}
