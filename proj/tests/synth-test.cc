// tests/synth-test.cc

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
#include "ivplda/suv.h"
#include "ivplda/synth.h"

using namespace ivplda;

namespace {

Matrix PooledCovariance(const Matrix &x) {
  const Matrix c = x.colwise() - x.rowwise().mean();
  return c * c.transpose() / static_cast<double>(x.cols() - 1);
}

// Between-speaker covariance of speaker means and within-speaker
// covariance around them.
void SpeakerCovariances(const IVectorSet &set, Matrix *between, Matrix *within) {
  const Matrix x = set.AsMatrix();
  const auto groups = GroupBySpeaker(set.SpeakerIds());
  Matrix means(x.rows(), static_cast<Eigen::Index>(groups.size()));
  *within = Matrix::Zero(x.rows(), x.rows());
  for (size_t s = 0; s < groups.size(); ++s) {
    means.col(s) = x(Eigen::all, groups[s]).rowwise().mean();
    const Matrix c = x(Eigen::all, groups[s]).colwise() - Vector(means.col(s));
    *within += c * c.transpose();
  }
  *within /= static_cast<double>(x.cols() - groups.size());
  *between = PooledCovariance(means);
}

}  // namespace

TEST_CASE("same seed gives identical corpora") {
  SynthConfig cfg;
  cfg.seed = 5;
  cfg.n_speakers = 20;
  cfg.durations_sec = {5.0, 30.0};
  CHECK(GenerateCorpus(cfg) == GenerateCorpus(cfg));
  const auto a = MakeFullShortPairs(cfg, 100.0, 20.0);
  const auto b = MakeFullShortPairs(cfg, 100.0, 20.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].w_full == b[i].w_full);
    CHECK(a[i].w_short == b[i].w_short);
  }
  const IVectorSet first = GenerateCorpus(cfg);
  cfg.seed = 6;
  CHECK(!(GenerateCorpus(cfg) == first));
}

TEST_CASE("metadata is populated") {
  SynthConfig cfg;
  cfg.n_speakers = 3;
  cfg.sessions_per_speaker = 2;
  cfg.durations_sec = {10.0, 20.0};
  const IVectorSet set = GenerateCorpus(cfg);
  CHECK(set.size() == 12);
  CHECK(set[0].utterance_id == "spk00000-s0-u0");
  CHECK(set[1].utterance_id == "spk00000-s0-u1");
  CHECK(set[1].duration_sec == 20.0);
  CHECK(set[11].speaker_id == "spk00002");
}

TEST_CASE("pooled covariance matches the model") {
  SynthConfig cfg;
  cfg.seed = 1;
  cfg.dim = 4;
  cfg.n_speakers = 200;
  cfg.sessions_per_speaker = 4;
  const double expected = 1.0 + 0.3 + 4.0 / 10.0;
  // One diagonal entry has a relative sd near 7% at 200 speakers, so single
  // entries are checked on the seed average and the trace per seed.
  Matrix average = Matrix::Zero(4, 4);
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    cfg.seed = seed;
    const Matrix cov = PooledCovariance(GenerateCorpus(cfg).AsMatrix());
    CHECK(std::abs(cov.trace() / 4.0 - expected) <= 0.10 * expected);
    average += cov / seeds;
  }
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(average(i, i) - expected) <= 0.10 * expected);
}

TEST_CASE("between and within speaker covariances") {
  SynthConfig cfg;
  cfg.seed = 2;
  cfg.dim = 5;
  cfg.n_speakers = 2000;
  cfg.sessions_per_speaker = 4;
  Matrix between, within;
  SpeakerCovariances(GenerateCorpus(cfg), &between, &within);
  const double w = 0.3 + 0.4;
  // Speaker means still carry 1/4 of the within-speaker variance.
  const double b = 1.0 + w / 4.0;
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(between(i, i) - b) <= 0.10 * b);
    CHECK(std::abs(within(i, i) - w) <= 0.10 * w);
  }
}

TEST_CASE("per-dimension scales shape the covariances") {
  SynthConfig cfg;
  cfg.seed = 3;
  cfg.dim = 3;
  cfg.n_speakers = 2000;
  cfg.speaker_scales = {4.0, 1.0, 0.25};
  cfg.utterance_scales = {0.5, 1.0, 3.0};
  Matrix between, within;
  SpeakerCovariances(GenerateCorpus(cfg), &between, &within);
  for (int i = 0; i < 3; ++i) {
    const double w = 0.3 + 0.4 * cfg.utterance_scales[i];
    const double b = cfg.speaker_scales[i] + w / 4.0;
    CHECK(std::abs(between(i, i) - b) <= 0.10 * b);
    CHECK(std::abs(within(i, i) - w) <= 0.10 * w);
  }
  cfg.speaker_scales = {1.0, 1.0};
  CHECK_THROWS_AS(cfg.Validate(), InvalidArgument);
}

TEST_CASE("utterance noise vanishes for very long recordings") {
  SynthConfig cfg;
  cfg.dim = 6;
  SpeakerSampler sampler(cfg, SynthStream::kCorpus, 0);
  double sum_sq = 0.0;
  int count = 0;
  for (int j = 0; j < 200; ++j) {
    const Vector session = sampler.NewSession();
    sum_sq += (sampler.Utterance(session, 1e9) - session).squaredNorm();
    count += cfg.dim;
  }
  CHECK(sum_sq / count < 1e-6 * cfg.session_var);
}

TEST_CASE("shorter recordings have larger within-speaker scatter") {
  double previous = std::numeric_limits<double>::infinity();
  for (double tau : {5.0, 10.0, 20.0, 100.0}) {
    SynthConfig cfg;
    cfg.seed = 4;
    cfg.dim = 10;
    cfg.n_speakers = 200;
    cfg.durations_sec = {tau};
    Matrix between, within;
    SpeakerCovariances(GenerateCorpus(cfg), &between, &within);
    CHECK(within.trace() < previous);
    previous = within.trace();
  }
}

TEST_CASE("pairs share speaker and session terms") {
  SynthConfig cfg;
  cfg.dim = 4;
  cfg.n_speakers = 10;
  cfg.utterance_var_per_sec = 1e-12;
  const auto pairs = MakeFullShortPairs(cfg, 100.0, 20.0);
  CHECK(pairs.size() == 40);
  Matrix f(4, 40), s(4, 40);
  for (size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].w_full.speaker_id == pairs[i].w_short.speaker_id);
    CHECK(pairs[i].w_short.duration_sec < pairs[i].w_full.duration_sec);
    f.col(i) = pairs[i].w_full.values.cast<double>();
    s.col(i) = pairs[i].w_short.values.cast<double>();
  }
  // Float storage limits how small the differences can be.
  const SuvModel m = EstimateSuv(f, s, LdaTransform{Matrix::Identity(4, 4)});
  CHECK(m.s_suv.cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(MakeFullShortPairs(cfg, 20.0, 20.0), InvalidArgument);
  CHECK_THROWS_AS(MakeFullShortPairs(cfg, 20.0, -1.0), InvalidArgument);
}

TEST_CASE("expected SUV of synthetic pairs") {
  SynthConfig cfg;
  cfg.seed = 8;
  cfg.dim = 3;
  cfg.n_speakers = 2500;
  cfg.sessions_per_speaker = 4;
  const double full = 150.0, short_sec = 20.0;
  const auto pairs = MakeFullShortPairs(cfg, full, short_sec);
  REQUIRE(pairs.size() == 10000);
  const SuvModel m = EstimateSuv(pairs, LdaTransform{Matrix::Identity(3, 3)});
  const double expected = cfg.utterance_var_per_sec * (1.0 / short_sec + 1.0 / full);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(m.s_suv(i, i) - expected) <= 0.10 * expected);
}

TEST_CASE("invalid configurations") {
  SynthConfig cfg;
  cfg.session_var = 0.0;
  CHECK_THROWS_AS(GenerateCorpus(cfg), InvalidArgument);
  cfg = SynthConfig{};
  cfg.durations_sec = {10.0, -1.0};
  CHECK_THROWS_AS(GenerateCorpus(cfg), InvalidArgument);
  cfg = SynthConfig{};
  cfg.durations_sec.clear();
  CHECK_THROWS_AS(GenerateCorpus(cfg), InvalidArgument);
  cfg = SynthConfig{};
  cfg.dim = 0;
  CHECK_THROWS_AS(GenerateCorpus(cfg), InvalidArgument);
}
