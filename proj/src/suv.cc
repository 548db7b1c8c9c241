// src/suv.cc

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

#include "ivplda/suv.h"

#include <cmath>
#include <limits>

#include "ivplda/random.h"

namespace ivplda {

namespace {

// Cholesky that also rejects numerically singular input: every pivot must
// exceed k * eps * max diag(s).
bool TryCholesky(const Matrix &s, Matrix *lower) {
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) return false;
  Matrix l = llt.matrixL();
  const double floor = static_cast<double>(s.rows()) *
                       std::numeric_limits<double>::epsilon() *
                       s.diagonal().maxCoeff();
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    if (!(l(i, i) * l(i, i) > floor)) return false;
  *lower = std::move(l);
  return true;
}

}  // namespace

MatrixArchive SuvModel::ToArchive() const {
  MatrixArchive archive;
  archive.Put("S_SUV", s_suv);
  archive.Put("D", d_factor);
  archive.PutScalar("ridge", ridge_used);
  return archive;
}

SuvModel SuvModel::FromArchive(const MatrixArchive &archive) {
  SuvModel model{archive.Get("S_SUV"), archive.Get("D"),
                 archive.GetScalar("ridge")};
  if (model.s_suv.rows() != model.s_suv.cols() ||
      model.d_factor.rows() != model.s_suv.rows() ||
      model.d_factor.cols() != model.s_suv.cols())
    throw FormatError("SUV model sections have inconsistent shapes");
  return model;
}

Decorrelation Decorrelate(const Matrix &s) {
  if (s.rows() != s.cols() || s.rows() == 0)
    throw InvalidArgument("decorrelate needs a nonempty square matrix");
  if (!s.allFinite()) throw InvalidArgument("decorrelate: non-finite input");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("decorrelate: matrix is not symmetric");

  const Eigen::Index k = s.rows();
  if (s.isZero(0.0)) return {Matrix::Zero(k, k), 0.0};

  Decorrelation out;
  if (TryCholesky(s, &out.d_factor)) return out;

  const double scale = s.trace() / static_cast<double>(k);
  for (double factor : {1e-12, 1e-10, 1e-8, 1e-6}) {
    const double ridge = factor * scale;
    Matrix shifted = s;
    shifted.diagonal().array() += ridge;
    if (TryCholesky(shifted, &out.d_factor)) {
      out.ridge = ridge;
      return out;
    }
  }
  throw NumericalError(Concat("Cholesky of SUV matrix failed at the largest ridge ",
                              1e-6 * scale));
}

SuvModel EstimateSuv(const Matrix &full, const Matrix &short_,
                     const LdaTransform &lda) {
  if (full.cols() == 0) throw InvalidArgument("SUV estimation needs >= 1 pair");
  if (full.rows() != short_.rows() || full.cols() != short_.cols())
    throw InvalidArgument("full and short vector sets differ in shape");
  if (full.rows() != lda.input_dim())
    throw InvalidArgument(Concat("vectors have dim ", full.rows(),
                                 ", LDA expects ", lda.input_dim()));
  const Matrix diff = lda.a.transpose() * (full - short_);
  SuvModel model;
  model.s_suv = diff * diff.transpose() / static_cast<double>(full.cols());
  // The product is symmetric in exact arithmetic; make it so bitwise.
  model.s_suv = (0.5 * (model.s_suv + model.s_suv.transpose())).eval();
  Decorrelation dec = Decorrelate(model.s_suv);
  model.d_factor = std::move(dec.d_factor);
  model.ridge_used = dec.ridge;
  return model;
}

SuvModel EstimateSuv(const std::vector<UtterancePair> &pairs,
                     const LdaTransform &lda) {
  if (pairs.empty()) throw InvalidArgument("SUV estimation needs >= 1 pair");
  const Eigen::Index dim = pairs.front().w_full.values.size();
  Matrix full(dim, static_cast<Eigen::Index>(pairs.size()));
  Matrix short_(dim, full.cols());
  for (size_t n = 0; n < pairs.size(); ++n) {
    const auto &p = pairs[n];
    if (p.w_full.speaker_id != p.w_short.speaker_id)
      throw InvalidArgument(Concat("pair ", n, " mixes speakers ",
                                   p.w_full.speaker_id, " and ",
                                   p.w_short.speaker_id));
    if (!(p.w_short.duration_sec < p.w_full.duration_sec))
      throw InvalidArgument(Concat("pair ", n, ": short duration ",
                                   p.w_short.duration_sec,
                                   " is not below full duration ",
                                   p.w_full.duration_sec));
    if (p.w_full.values.size() != dim || p.w_short.values.size() != dim)
      throw InvalidArgument(Concat("pair ", n, " has mismatched dimensions"));
    full.col(n) = p.w_full.values.cast<double>();
    short_.col(n) = p.w_short.values.cast<double>();
  }
  return EstimateSuv(full, short_, lda);
}

std::vector<Vector> Augment(const Vector &w_full, const SuvModel &model,
                            uint64_t rng_seed, int copies) {
  if (copies <= 0) throw InvalidArgument("copies must be positive");
  if (w_full.size() != model.d_factor.rows())
    throw InvalidArgument(Concat("vector dim ", w_full.size(),
                                 " does not match SUV dim ",
                                 model.d_factor.rows()));
  std::vector<Vector> out;
  out.reserve(copies);
  for (int c = 0; c < copies; ++c) {
    Engine engine = MakeEngine({rng_seed, static_cast<uint64_t>(c)});
    out.push_back(w_full + model.d_factor * StandardNormal(engine, w_full.size()));
  }
  return out;
}

Matrix AugmentColumns(const Matrix &vectors, const SuvModel &model,
                      uint64_t rng_seed, int copies) {
  if (copies <= 0) throw InvalidArgument("copies must be positive");
  Matrix out(vectors.rows(), vectors.cols() * copies);
  for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
    // Per-column seed derived from (rng_seed, i) so columns are independent.
    Engine keyed = MakeEngine({rng_seed, static_cast<uint64_t>(i)});
    const auto copies_i = Augment(vectors.col(i), model, keyed(), copies);
    for (int c = 0; c < copies; ++c) out.col(i * copies + c) = copies_i[c];
  }
  return out;
}

}  // namespace ivplda
