// src/enroll.cc

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

#include "ivplda/enroll.h"

namespace ivplda {

std::vector<BaumWelchStats> SplitStats(const FrameStats &frames, int parts) {
  const Eigen::Index total = frames.num_frames();
  if (parts < 1) throw InvalidArgument("parts must be >= 1");
  if (frames.first_order.cols() != total)
    throw InvalidArgument("occupancy and first-order frame counts differ");
  if (total < parts)
    throw InvalidArgument(Concat("cannot split ", total, " frames into ",
                                 parts, " parts"));
  const Eigen::Index base = total / parts, remainder = total % parts;
  std::vector<BaumWelchStats> chunks;
  chunks.reserve(parts);
  Eigen::Index begin = 0;
  for (int p = 0; p < parts; ++p) {
    const Eigen::Index length = base + (p < remainder ? 1 : 0);
    BaumWelchStats stats{Vector::Zero(frames.occupancy.rows()),
                         Vector::Zero(frames.first_order.rows())};
    for (Eigen::Index t = begin; t < begin + length; ++t) {
      stats.occupancy += frames.occupancy.col(t);
      stats.first_order += frames.first_order.col(t);
    }
    chunks.push_back(std::move(stats));
    begin += length;
  }
  return chunks;
}

Vector AverageIvectors(const std::vector<Vector> &vectors) {
  if (vectors.empty()) throw InvalidArgument("cannot average an empty list");
  Vector sum = Vector::Zero(vectors.front().size());
  for (const auto &v : vectors) {
    if (v.size() != sum.size())
      throw InvalidArgument(Concat("cannot average vectors of dims ",
                                   sum.size(), " and ", v.size()));
    sum += v;
  }
  return sum / static_cast<double>(vectors.size());
}

Vector PartitionedIvector(const FrameStats &frames, int parts,
                          const TvModel &tv) {
  std::vector<Vector> pieces;
  for (const auto &stats : SplitStats(frames, parts))
    pieces.push_back(ExtractIvector(stats, tv));
  return AverageIvectors(pieces);
}

Vector EnrolledVector(const std::vector<Vector> &pieces,
                      const LdaTransform &lda) {
  std::vector<Vector> projected;
  projected.reserve(pieces.size());
  for (const auto &p : pieces) projected.push_back(Project(p, lda));
  return LengthNormalize(AverageIvectors(projected));
}

std::vector<std::pair<std::string, FrameStats>> FrameStatsFromArchive(
    const MatrixArchive &archive) {
  std::vector<std::pair<std::string, FrameStats>> out;
  for (const auto &[name, value] : archive.sections()) {
    if (name.size() < 2 || name.compare(name.size() - 2, 2, "/n") != 0) continue;
    const std::string utt = name.substr(0, name.size() - 2);
    FrameStats frames{value, archive.Get(utt + "/f")};
    if (frames.first_order.cols() != frames.occupancy.cols())
      throw FormatError(Concat("frame counts differ for utterance ", utt));
    out.emplace_back(utt, std::move(frames));
  }
  if (out.empty()) throw FormatError("frame-statistics archive has no utterances");
  return out;
}

MatrixArchive FrameStatsToArchive(
    const std::vector<std::pair<std::string, FrameStats>> &utterances) {
  MatrixArchive archive;
  for (const auto &[utt, frames] : utterances) {
    archive.Put(utt + "/n", frames.occupancy);
    archive.Put(utt + "/f", frames.first_order);
  }
  return archive;
}

}  // namespace ivplda
