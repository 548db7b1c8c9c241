// include/ivplda/enroll.h

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

#ifndef IVPLDA_ENROLL_H_
#define IVPLDA_ENROLL_H_

#include <string>
#include <utility>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/preprocess.h"
#include "ivplda/tv-space.h"

namespace ivplda {

struct PartitionSpec {
  int parts = 1;
  double discard_head_sec = 0.0;
};

/// Time-ordered per-frame statistic contributions of one utterance.
struct FrameStats {
  Matrix occupancy;    // C x frames
  Matrix first_order;  // C*F x frames

  Eigen::Index num_frames() const { return occupancy.cols(); }
};

/// Splits the frames into `parts` contiguous chunks of equal length, the
/// remainder going one frame each to the earliest chunks, and sums each
/// chunk in frame order.
std::vector<BaumWelchStats> SplitStats(const FrameStats &frames, int parts);

/// Elementwise mean of equal-length vectors.
Vector AverageIvectors(const std::vector<Vector> &vectors);

/// Raw-space enrollment vector: split, extract per piece, average.
Vector PartitionedIvector(const FrameStats &frames, int parts,
                          const TvModel &tv);

/// Scoring-ready enrollment vector from per-piece i-vectors: each piece
/// is LDA-projected, the projections averaged, the average
/// length-normalized.
Vector EnrolledVector(const std::vector<Vector> &pieces,
                      const LdaTransform &lda);

/// Frame-statistics archive: MatrixArchive with sections "<utt>/n" and
/// "<utt>/f" per utterance, in utterance order.
std::vector<std::pair<std::string, FrameStats>> FrameStatsFromArchive(
    const MatrixArchive &archive);
MatrixArchive FrameStatsToArchive(
    const std::vector<std::pair<std::string, FrameStats>> &utterances);

}  // namespace ivplda

#endif  // IVPLDA_ENROLL_H_
