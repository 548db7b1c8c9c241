// include/ivplda/suv.h

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

#ifndef IVPLDA_SUV_H_
#define IVPLDA_SUV_H_

#include <cstdint>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/preprocess.h"
#include "ivplda/vectorstore.h"

namespace ivplda {

/// Short-utterance variance in LDA space and its Cholesky factor.
struct SuvModel {
  Matrix s_suv;             // k x k, symmetric PSD
  Matrix d_factor;          // lower triangular, D D' = s_suv + ridge_used I
  double ridge_used = 0.0;

  int dim() const { return static_cast<int>(s_suv.rows()); }

  MatrixArchive ToArchive() const;  // "S_SUV", "D", "ridge"
  static SuvModel FromArchive(const MatrixArchive &archive);
};

/// Full-length and truncated vectors of the same recording.
struct UtterancePair {
  IVector w_full;
  IVector w_short;
};

struct Decorrelation {
  Matrix d_factor;
  double ridge = 0.0;
};

/// Lower-triangular D with D D' = s + ridge I.  ridge is 0 when s is
/// numerically positive definite, otherwise the smallest of
/// {1e-12, 1e-10, 1e-8, 1e-6} * trace(s) / k for which the factorization
/// succeeds.  The zero matrix factors as D = 0.
Decorrelation Decorrelate(const Matrix &s);

/// S_SUV = (1/N) sum_n A'(full_n - short_n)(full_n - short_n)'A with
/// pairs given as matching columns of `full` and `short_`.
SuvModel EstimateSuv(const Matrix &full, const Matrix &short_,
                     const LdaTransform &lda);
/// Checks that each pair shares a speaker and the short side is shorter.
SuvModel EstimateSuv(const std::vector<UtterancePair> &pairs,
                     const LdaTransform &lda);

/// `copies` SUV-added versions of `w_full` (already in LDA space):
/// w_full + D d with d ~ N(0, I) drawn from an engine keyed by
/// (rng_seed, copy index).
std::vector<Vector> Augment(const Vector &w_full, const SuvModel &model,
                            uint64_t rng_seed, int copies);

/// Augments every column of `vectors`; column i uses seed key
/// (rng_seed, i).  Output has copies * N columns, the copies of column i
/// occupying [i*copies, (i+1)*copies).
Matrix AugmentColumns(const Matrix &vectors, const SuvModel &model,
                      uint64_t rng_seed, int copies);

}  // namespace ivplda

#endif  // IVPLDA_SUV_H_
