// tests/preprocess-test.cc

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

#include "doctest.h"
#include "ivplda/preprocess.h"
#include "ivplda/random.h"
#include "test-util.h"

using namespace ivplda;

namespace {

testing::LabeledData ClassData(Engine &engine, const Matrix &means,
                               int per_class, const Vector &noise_sd) {
  testing::LabeledData out;
  const Eigen::Index d = means.rows();
  out.data.resize(d, means.cols() * per_class);
  Eigen::Index col = 0;
  for (Eigen::Index s = 0; s < means.cols(); ++s)
    for (int j = 0; j < per_class; ++j) {
      out.data.col(col++) =
          means.col(s) + noise_sd.cwiseProduct(StandardNormal(engine, d));
      out.speakers.push_back("s" + std::to_string(s));
    }
  return out;
}

// Scatter matrices straight from the definitions.
void Scatters(const testing::LabeledData &x, Matrix *sb, Matrix *sw) {
  const auto groups = GroupBySpeaker(x.speakers);
  const Eigen::Index d = x.data.rows();
  Matrix means(d, static_cast<Eigen::Index>(groups.size()));
  *sw = Matrix::Zero(d, d);
  for (size_t s = 0; s < groups.size(); ++s) {
    Vector m = Vector::Zero(d);
    for (int i : groups[s]) m += x.data.col(i);
    m /= static_cast<double>(groups[s].size());
    means.col(s) = m;
    for (int i : groups[s])
      *sw += (x.data.col(i) - m) * (x.data.col(i) - m).transpose();
  }
  *sw /= static_cast<double>(x.data.cols());
  const Vector grand = means.rowwise().mean();
  const Matrix c = means.colwise() - grand;
  *sb = c * c.transpose() / static_cast<double>(groups.size());
}

double TraceRatio(const Matrix &a, const Matrix &sb, const Matrix &sw) {
  return (a.transpose() * sb * a).trace() / (a.transpose() * sw * a).trace();
}

}  // namespace

TEST_CASE("two speakers separated along the first axis") {
  Engine engine = MakeEngine({41});
  Matrix means = Matrix::Zero(4, 2);
  means(0, 0) = 3.0;
  means(0, 1) = -3.0;
  const auto x = ClassData(engine, means, 200, Vector::Ones(4));
  const LdaTransform lda = TrainLda(x.data, x.speakers, 1);
  REQUIRE(lda.output_dim() == 1);
  CHECK(lda.a.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(lda.a(0, 0)) > 0.99);
  // Closed-form two-class Fisher direction.
  Matrix sb, sw;
  Scatters(x, &sb, &sw);
  const Vector m1 = x.data.leftCols(200).rowwise().mean();
  const Vector m2 = x.data.rightCols(200).rowwise().mean();
  const Vector fisher = sw.ldlt().solve(m1 - m2).normalized();
  CHECK(std::abs(fisher.dot(lda.a.col(0))) > 0.999999);
}

TEST_CASE("LDA preconditions") {
  Engine engine = MakeEngine({42});
  const Matrix data = testing::RandomMatrix(engine, 3, 10);
  CHECK_THROWS_AS(TrainLda(data, std::vector<std::string>(10, "s"), 1),
                  InvalidArgument);
  std::vector<std::string> two(10, "a");
  for (int i = 5; i < 10; ++i) two[i] = "b";
  CHECK_THROWS_AS(TrainLda(data, two, 2), InvalidArgument);
  CHECK_THROWS_AS(TrainLda(data, two, 0), InvalidArgument);
  CHECK_THROWS_AS(TrainLda(data, std::vector<std::string>(9, "a"), 1),
                  InvalidArgument);
  CHECK(TrainLda(data, two, 1).output_dim() == 1);
}

TEST_CASE("columns are unit norm, sign-fixed and deterministic") {
  Engine engine = MakeEngine({43});
  const Matrix means = 2.0 * testing::RandomMatrix(engine, 6, 8);
  const auto x = ClassData(engine, means, 5, Vector::Constant(6, 0.7));
  const LdaTransform a = TrainLda(x.data, x.speakers, 5);
  const LdaTransform b = TrainLda(x.data, x.speakers, 5);
  CHECK(a.a == b.a);
  for (Eigen::Index j = 0; j < a.a.cols(); ++j) {
    CHECK(a.a.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Index first = 0;
    while (a.a(first, j) == 0.0) ++first;
    CHECK(a.a(first, j) > 0.0);
  }
  CHECK(a.a.fullPivLu().rank() == 5);
}

TEST_CASE("trace ratio beats random orthonormal projections") {
  Engine engine = MakeEngine({44});
  const int d = 10, d_out = 3;
  Vector spread(d);
  for (int i = 0; i < d; ++i) spread(i) = 0.3 + 0.2 * i;
  const Matrix means = testing::RandomMatrix(engine, d, 30);
  const auto x = ClassData(engine, means, 6, spread);
  const LdaTransform lda = TrainLda(x.data, x.speakers, d_out);
  Matrix sb, sw;
  Scatters(x, &sb, &sw);
  const double ours = TraceRatio(lda.a, sb, sw);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = testing::RandomMatrix(engine, d, d_out);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ() *
                     Matrix::Identity(d, d_out);
    CHECK(ours >= TraceRatio(q, sb, sw));
  }
}

TEST_CASE("singular within-class scatter is ridge-regularized with a warning") {
  std::vector<std::string> warnings;
  SetWarningSink([&](std::string_view m) { warnings.emplace_back(m); });
  Engine engine = MakeEngine({45});
  // The last coordinate never varies within a speaker.
  Matrix means = testing::RandomMatrix(engine, 3, 4);
  auto x = ClassData(engine, means, 5, Vector{{1.0, 1.0, 0.0}});
  const LdaTransform lda = TrainLda(x.data, x.speakers, 2);
  SetWarningSink(nullptr);
  CHECK(lda.ridge_used > 0.0);
  CHECK(warnings.size() == 1);
  CHECK(lda.a.allFinite());
}

TEST_CASE("projection") {
  CHECK(Project(Vector{{3.0, 4.0}}, LdaTransform{Matrix::Identity(2, 2)}) ==
        Vector{{3.0, 4.0}});
  CHECK(Project(Vector{{3.0, 4.0}}, LdaTransform{Matrix{{1.0}, {0.0}}}) ==
        Vector{{3.0}});
  Engine engine = MakeEngine({46});
  const LdaTransform lda{testing::RandomMatrix(engine, 7, 3)};
  const Vector w = testing::RandomMatrix(engine, 7, 1).col(0);
  Vector oracle = Vector::Zero(3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 7; ++i) oracle(j) += lda.a(i, j) * w(i);
  CHECK((Project(w, lda) - oracle).norm() < 1e-12);
  const Matrix cols = testing::RandomMatrix(engine, 7, 4);
  const Matrix projected = Project(cols, lda);
  for (int c = 0; c < 4; ++c)
    CHECK((projected.col(c) - Project(Vector(cols.col(c)), lda)).norm() < 1e-12);
  CHECK_THROWS_AS(Project(Vector(Vector::Ones(6)), lda), InvalidArgument);
}

TEST_CASE("length normalization") {
  const Vector n = LengthNormalize(Vector{{3.0, 4.0}});
  CHECK(n(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(n(1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(LengthNormalize(Vector::Zero(3)), InvalidArgument);
  Engine engine = MakeEngine({47});
  for (int trial = 0; trial < 200; ++trial) {
    const Vector w = testing::RandomMatrix(engine, 9, 1).col(0) *
                     std::exp(3.0 * StandardNormal(engine, 1)(0));
    const Vector u = LengthNormalize(w);
    CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
    CHECK((LengthNormalize(u) - u).norm() <= 1e-15);
    const double alpha = std::exp(2.0 * StandardNormal(engine, 1)(0));
    CHECK((LengthNormalize(alpha * w) - u).norm() <= 1e-12);
  }
}

TEST_CASE("LDA archive round-trip") {
  Engine engine = MakeEngine({48});
  LdaTransform lda{testing::RandomMatrix(engine, 5, 2), 0.0};
  const LdaTransform back = LdaTransform::FromArchive(lda.ToArchive());
  CHECK(back.a == lda.a);
}
