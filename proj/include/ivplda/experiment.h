// include/ivplda/experiment.h

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

#ifndef IVPLDA_EXPERIMENT_H_
#define IVPLDA_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/eval.h"

namespace ivplda {

/// Synthetic comparison of the four back-ends (plain and SUV-augmented
/// GPLDA, each with single-piece and partitioned enrollment) plus the
/// longer single-recording enrollment as a reference row.
///
/// Development data are full-length recordings paired with short
/// recordings of the same sessions (for SUV estimation).  Evaluation
/// enrollment sessions each provide `partitions` pieces of
/// enroll_long_sec / partitions seconds; the single-piece condition uses
/// the first piece.  Every enrollment is scored against every test
/// recording.
struct ExperimentConfig {
  uint64_t seed = 7;
  int num_seeds = 5;

  int dim = 50;
  int dev_speakers = 500;
  int dev_sessions = 8;
  int eval_speakers = 200;
  int enroll_sessions = 4;
  int test_sessions = 4;
  int cohort_speakers = 200;

  double speaker_var = 1.0;
  double session_var = 0.3;
  double utterance_var_per_sec = 4.0;
  // Speaker variance of dimension i is scaled by exp(-i / speaker_decay);
  // 0 keeps it isotropic.
  double speaker_decay = 15.0;
  // Utterance variance is scaled by utterance_focus_scale on the first
  // utterance_focus_dims dimensions and utterance_background_scale on the
  // rest.
  int utterance_focus_dims = 10;
  double utterance_focus_scale = 3.0;
  double utterance_background_scale = 0.5;

  double full_sec = 150.0;
  double suv_short_sec = 20.0;
  double enroll_long_sec = 20.0;
  double test_sec = 10.0;
  int partitions = 2;

  int lda_dim = 40;
  int n1 = 30;
  int em_iterations = 20;
  int suv_copies = 1;
  bool snorm = true;
  int cohort_size = 200;
  CostParams cost;

  void Validate() const;
};

/// Raw-space synthetic data for one seed of the experiment.
struct SyntheticDataset {
  Matrix dev_full, dev_short;  // paired columns
  std::vector<std::string> dev_speakers;
  // Per enrollment session: `partitions` pieces, plus one independent
  // recording of the whole enrollment length.
  std::vector<std::vector<Vector>> enroll_pieces;
  Matrix enroll_long;
  std::vector<int> enroll_speaker;
  Matrix tests;
  std::vector<int> test_speaker;
  Matrix cohort;  // one test-length recording per cohort speaker
};

SyntheticDataset GenerateDataset(const ExperimentConfig &cfg, uint64_t seed);

struct ConditionResult {
  std::string system;     // "GPLDA" or "SUV-GPLDA"
  std::string condition;  // e.g. "10sec-10sec", "10sec(2)-10sec"
  bool partitioned = false;
  double eer = 0.0;
  double min_dcf = 0.0;
};

struct SeedResult {
  uint64_t seed = 0;
  std::vector<ConditionResult> rows;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SeedResult> seeds;
  std::vector<ConditionResult> mean;  // averaged over seeds, same row order

  /// Row lookup in `rows` by system and condition; throws if absent.
  static const ConditionResult &Find(const std::vector<ConditionResult> &rows,
                                     const std::string &system,
                                     const std::string &condition);
};

/// Condition labels derived from the durations, e.g. "10sec-10sec".
std::string SinglePieceCondition(const ExperimentConfig &cfg);
std::string LongCondition(const ExperimentConfig &cfg);
std::string PartitionedCondition(const ExperimentConfig &cfg);

SeedResult RunExperimentSeed(const ExperimentConfig &cfg, uint64_t seed,
                             int workers = 1);
ExperimentReport RunExperiment(const ExperimentConfig &cfg, int workers = 1);

/// Pretty-printed JSON; identical inputs give identical bytes.
std::string ReportToJson(const ExperimentReport &report);
/// Aligned text table, one block per system.
std::string ReportToText(const ExperimentReport &report);

}  // namespace ivplda

#endif  // IVPLDA_EXPERIMENT_H_
