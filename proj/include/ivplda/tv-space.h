// include/ivplda/tv-space.h

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

#ifndef IVPLDA_TV_SPACE_H_
#define IVPLDA_TV_SPACE_H_

#include <filesystem>

#include "ivplda/common.h"
#include "ivplda/matrix-archive.h"

namespace ivplda {

/// Total-variability model: UBM mean super-vector, the low-rank matrix T
/// and per-component diagonal covariances.  Super-vectors are flattened
/// component-major, i.e. component c occupies rows [c*F, (c+1)*F).
struct TvModel {
  Vector mean;    // C*F
  Matrix t;       // C*F x R
  Matrix sigma;   // C x F, strictly positive

  int num_components() const { return static_cast<int>(sigma.rows()); }
  int feat_dim() const { return static_cast<int>(sigma.cols()); }
  int ivector_dim() const { return static_cast<int>(t.cols()); }

  /// Shape and positivity checks.  With `check_rank`, also requires T to
  /// have full column rank (singular values above 1e-8 * the largest).
  void Validate(bool check_rank) const;

  /// Sections "m", "T", "sigma".  Read() validates including the rank test.
  MatrixArchive ToArchive() const;
  static TvModel FromArchive(const MatrixArchive &archive);
};

/// Zeroth- and first-order Baum-Welch statistics of one utterance.
struct BaumWelchStats {
  Vector occupancy;    // C, nonnegative
  Vector first_order;  // C*F, flattened like TvModel::mean
};

/// MAP point estimate (posterior mean) of the i-vector:
///   w = (I + T' S^-1 N T)^-1 T' S^-1 (f - N m)
Vector ExtractIvector(const BaumWelchStats &stats, const TvModel &tv);

}  // namespace ivplda

#endif  // IVPLDA_TV_SPACE_H_
