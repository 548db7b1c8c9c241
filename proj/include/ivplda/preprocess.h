// include/ivplda/preprocess.h

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

#ifndef IVPLDA_PREPROCESS_H_
#define IVPLDA_PREPROCESS_H_

#include <string>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/vectorstore.h"

namespace ivplda {

/// Linear projection y = A' w onto the top discriminant directions.
struct LdaTransform {
  Matrix a;                 // d_in x d_out, unit-norm columns
  double ridge_used = 0.0;  // added to S_w when it was singular

  int input_dim() const { return static_cast<int>(a.rows()); }
  int output_dim() const { return static_cast<int>(a.cols()); }

  MatrixArchive ToArchive() const;  // section "A"
  static LdaTransform FromArchive(const MatrixArchive &archive);
};

/// Trains LDA on the columns of `data` (d_in x N) labelled by `speakers`.
/// Columns of the result are the generalized eigenvectors of
/// (S_b, S_w) with the d_out largest eigenvalues, in descending order,
/// each scaled to unit norm with its first nonzero coordinate positive.
/// S_b weights every speaker mean equally.  If S_w is singular it is
/// ridge-regularized by 1e-6 * trace(S_w) / d_in and a warning is issued.
LdaTransform TrainLda(const Matrix &data,
                      const std::vector<std::string> &speakers, int d_out);
LdaTransform TrainLda(const IVectorSet &data, int d_out);

Vector Project(const Vector &w, const LdaTransform &lda);
/// Column-wise projection of a d_in x N matrix.
Matrix Project(const Matrix &columns, const LdaTransform &lda);

/// w / |w|.  Throws InvalidArgument on the zero vector.
Vector LengthNormalize(const Vector &w);
Matrix LengthNormalizeColumns(const Matrix &columns);

}  // namespace ivplda

#endif  // IVPLDA_PREPROCESS_H_
