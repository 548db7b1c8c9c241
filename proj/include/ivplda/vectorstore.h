// include/ivplda/vectorstore.h

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

#ifndef IVPLDA_VECTORSTORE_H_
#define IVPLDA_VECTORSTORE_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ivplda/common.h"

namespace ivplda {

/// One utterance-level vector with its metadata.  Values are stored in
/// single precision, matching the on-disk payload, so that a write/read
/// cycle is exact.
struct IVector {
  Eigen::VectorXf values;
  std::string utterance_id;
  std::string speaker_id;
  double duration_sec = 0.0;  // seconds of active speech
  std::optional<std::string> channel_tag;

  bool operator==(const IVector &other) const;
};

/// Ordered, dimension-homogeneous collection of IVectors with unique
/// utterance ids.  Add() enforces the invariants.
class IVectorSet {
 public:
  explicit IVectorSet(int dim);

  int dim() const { return dim_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<IVector> &entries() const { return entries_; }
  const IVector &operator[](size_t i) const { return entries_[i]; }

  void Add(IVector v);
  // Convenience for double-precision producers; values are rounded to float.
  void Add(const Vector &values, std::string utterance_id,
           std::string speaker_id, double duration_sec,
           std::optional<std::string> channel_tag = std::nullopt);

  bool Contains(const std::string &utterance_id) const {
    return index_.count(utterance_id) != 0;
  }
  // Throws InvalidArgument if absent.
  const IVector &Find(const std::string &utterance_id) const;

  /// dim x size() matrix, one column per entry, promoted to double.
  Matrix AsMatrix() const;
  /// Speaker id per entry, in order.
  std::vector<std::string> SpeakerIds() const;

  bool operator==(const IVectorSet &other) const;

 private:
  int dim_;
  std::vector<IVector> entries_;
  std::unordered_map<std::string, size_t> index_;
};

/// Indices of `speaker_ids` grouped by speaker, groups ordered by first
/// appearance and indices ascending within a group.
std::vector<std::vector<int>> GroupBySpeaker(
    const std::vector<std::string> &speaker_ids);

/// IVEC container (all integers u32 little-endian):
///   "IVEC" | version=1 | dim | count | count*dim float32 LE row-major |
///   manifest byte length | JSON manifest
/// The manifest is an array of {utterance_id, speaker_id, duration_sec,
/// channel_tag?} objects in row order.
void WriteIvectors(const IVectorSet &set, std::ostream &os);
void WriteIvectors(const IVectorSet &set, const std::filesystem::path &path);
IVectorSet ReadIvectors(std::istream &is);
IVectorSet ReadIvectors(const std::filesystem::path &path);

enum class TrialLabel { kTarget, kNontarget, kUnknown };

struct Trial {
  std::string enrol_id;
  std::string test_id;
  TrialLabel label = TrialLabel::kUnknown;

  bool operator==(const Trial &) const = default;
};

/// Parses "enrol_id test_id [target|nontarget]" lines.  Blank lines are
/// skipped; errors name the 1-based line number.
std::vector<Trial> ReadTrials(std::istream &is);
std::vector<Trial> ReadTrials(const std::filesystem::path &path);
void WriteTrials(const std::vector<Trial> &trials, std::ostream &os);
void WriteTrials(const std::vector<Trial> &trials,
                 const std::filesystem::path &path);

struct ScoreEntry {
  std::string enrol_id;
  std::string test_id;
  double score = 0.0;
};

/// Trial scores in insertion order; pair keys are unique and scores finite.
class ScoreSet {
 public:
  void Add(std::string enrol_id, std::string test_id, double score);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<ScoreEntry> &entries() const { return entries_; }
  const ScoreEntry &operator[](size_t i) const { return entries_[i]; }

 private:
  std::vector<ScoreEntry> entries_;
  std::unordered_set<std::string> keys_;
};

/// Score file: "enrol_id test_id score" per line, score with 6 decimals.
void WriteScores(const ScoreSet &scores, std::ostream &os);
void WriteScores(const ScoreSet &scores, const std::filesystem::path &path);
ScoreSet ReadScores(std::istream &is);
ScoreSet ReadScores(const std::filesystem::path &path);

}  // namespace ivplda

#endif  // IVPLDA_VECTORSTORE_H_
