// src/preprocess.cc

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

#include "ivplda/preprocess.h"

#include <cmath>

namespace ivplda {

MatrixArchive LdaTransform::ToArchive() const {
  MatrixArchive archive;
  archive.Put("A", a);
  return archive;
}

LdaTransform LdaTransform::FromArchive(const MatrixArchive &archive) {
  LdaTransform lda;
  lda.a = archive.Get("A");
  if (lda.a.cols() == 0 || lda.a.cols() > lda.a.rows())
    throw FormatError(Concat("LDA matrix has invalid shape ", lda.a.rows(),
                             " x ", lda.a.cols()));
  return lda;
}

LdaTransform TrainLda(const Matrix &data,
                      const std::vector<std::string> &speakers, int d_out) {
  const Eigen::Index d_in = data.rows();
  if (static_cast<size_t>(data.cols()) != speakers.size())
    throw InvalidArgument(Concat("LDA: ", data.cols(), " vectors but ",
                                 speakers.size(), " speaker labels"));
  const auto groups = GroupBySpeaker(speakers);
  const int num_speakers = static_cast<int>(groups.size());
  if (num_speakers < 2)
    throw InvalidArgument(Concat("LDA needs at least 2 speakers, got ",
                                 num_speakers));
  if (d_out <= 0 || d_out > d_in || d_out > num_speakers - 1)
    throw InvalidArgument(Concat("LDA output dim ", d_out,
                                 " must be in [1, min(d_in=", d_in,
                                 ", speakers-1=", num_speakers - 1, ")]"));
  if (!data.allFinite()) throw InvalidArgument("LDA: non-finite input");

  Matrix means(d_in, num_speakers);
  Matrix within = Matrix::Zero(d_in, d_in);
  for (int s = 0; s < num_speakers; ++s) {
    const auto &idx = groups[s];
    Vector mean = data(Eigen::all, idx).rowwise().mean();
    Matrix centered = data(Eigen::all, idx).colwise() - mean;
    within.noalias() += centered * centered.transpose();
    means.col(s) = mean;
  }
  within /= static_cast<double>(data.cols());
  Matrix centered_means = means.colwise() - means.rowwise().mean();
  Matrix between = centered_means * centered_means.transpose() /
                   static_cast<double>(num_speakers);

  LdaTransform lda;
  Eigen::SelfAdjointEigenSolver<Matrix> within_eig(within,
                                                   Eigen::EigenvaluesOnly);
  const double max_eig = within_eig.eigenvalues().maxCoeff();
  if (within_eig.eigenvalues().minCoeff() <= 1e-10 * std::max(max_eig, 0.0)) {
    double scale = within.trace() / static_cast<double>(d_in);
    if (!(scale > 0.0)) scale = std::max(between.trace() / d_in, 1.0);
    lda.ridge_used = 1e-6 * scale;
    within.diagonal().array() += lda.ridge_used;
    Warn(Concat("LDA: within-class scatter is singular; added ridge ",
                lda.ridge_used));
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(
      between, within, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw NumericalError("LDA generalized eigenproblem failed");

  // Eigenvalues come back ascending.
  lda.a.resize(d_in, d_out);
  for (int j = 0; j < d_out; ++j) {
    Vector v = solver.eigenvectors().col(d_in - 1 - j);
    v.normalize();
    for (Eigen::Index i = 0; i < d_in; ++i) {
      if (v(i) != 0.0) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    lda.a.col(j) = v;
  }
  return lda;
}

LdaTransform TrainLda(const IVectorSet &data, int d_out) {
  return TrainLda(data.AsMatrix(), data.SpeakerIds(), d_out);
}

Vector Project(const Vector &w, const LdaTransform &lda) {
  if (w.size() != lda.a.rows())
    throw InvalidArgument(Concat("cannot project vector of dim ", w.size(),
                                 " with LDA of input dim ", lda.a.rows()));
  return lda.a.transpose() * w;
}

Matrix Project(const Matrix &columns, const LdaTransform &lda) {
  if (columns.rows() != lda.a.rows())
    throw InvalidArgument(Concat("cannot project vectors of dim ",
                                 columns.rows(), " with LDA of input dim ",
                                 lda.a.rows()));
  return lda.a.transpose() * columns;
}

Vector LengthNormalize(const Vector &w) {
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidArgument("cannot length-normalize a zero or non-finite vector");
  return w / norm;
}

Matrix LengthNormalizeColumns(const Matrix &columns) {
  Matrix out(columns.rows(), columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j)
    out.col(j) = LengthNormalize(columns.col(j));
  return out;
}

}  // namespace ivplda
