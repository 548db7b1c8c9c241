// src/tv-space.cc

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

#include "ivplda/tv-space.h"

namespace ivplda {

void TvModel::Validate(bool check_rank) const {
  const Eigen::Index c = sigma.rows(), f = sigma.cols();
  if (c <= 0 || f <= 0 || t.cols() <= 0)
    throw InvalidArgument("TV model needs C > 0, F > 0 and R > 0");
  if (mean.size() != c * f || t.rows() != c * f)
    throw InvalidArgument(Concat("TV model shapes disagree: C*F = ", c * f,
                                 ", m has ", mean.size(), ", T has ", t.rows(),
                                 " rows"));
  if (!(sigma.array() > 0.0).all())
    throw InvalidArgument("TV model covariances must be strictly positive");
  if (!mean.allFinite() || !t.allFinite() || !sigma.allFinite())
    throw InvalidArgument("TV model has non-finite entries");
  if (check_rank) {
    Eigen::JacobiSVD<Matrix> svd(t);
    const Vector &sv = svd.singularValues();
    const double tol = 1e-8 * sv(0);
    const Eigen::Index rank = (sv.array() > tol).count();
    if (sv(0) <= 0.0 || rank < t.cols())
      throw InvalidArgument(Concat("T is rank deficient: rank ", rank, " < ",
                                   t.cols()));
  }
}

MatrixArchive TvModel::ToArchive() const {
  MatrixArchive archive;
  archive.Put("m", mean);
  archive.Put("T", t);
  archive.Put("sigma", sigma);
  return archive;
}

TvModel TvModel::FromArchive(const MatrixArchive &archive) {
  TvModel tv;
  const Matrix &m = archive.Get("m");
  if (m.cols() != 1) throw FormatError("section \"m\" must be a column vector");
  tv.mean = m.col(0);
  tv.t = archive.Get("T");
  tv.sigma = archive.Get("sigma");
  try {
    tv.Validate(true);
  } catch (const InvalidArgument &e) {
    throw FormatError(e.what());
  }
  return tv;
}

Vector ExtractIvector(const BaumWelchStats &stats, const TvModel &tv) {
  tv.Validate(false);
  const int c_count = tv.num_components(), f_dim = tv.feat_dim();
  const int r = tv.ivector_dim();
  if (stats.occupancy.size() != c_count ||
      stats.first_order.size() != tv.mean.size())
    throw InvalidArgument(Concat("stats shape (", stats.occupancy.size(), ", ",
                                 stats.first_order.size(),
                                 ") does not match TV model (", c_count, ", ",
                                 tv.mean.size(), ")"));
  if (!stats.occupancy.allFinite() || !stats.first_order.allFinite())
    throw InvalidArgument("non-finite Baum-Welch statistics");
  if ((stats.occupancy.array() < 0.0).any())
    throw InvalidArgument("negative occupancy");

  Matrix precision = Matrix::Identity(r, r);
  Vector linear = Vector::Zero(r);
  for (int c = 0; c < c_count; ++c) {
    const auto rows = Eigen::seqN(c * f_dim, f_dim);
    // T_c' Sigma_c^-1, an R x F block.
    const Matrix tc_scaled =
        tv.t(rows, Eigen::all).transpose() *
        tv.sigma.row(c).cwiseInverse().asDiagonal();
    const double n = stats.occupancy(c);
    if (n > 0.0) precision.noalias() += n * tc_scaled * tv.t(rows, Eigen::all);
    linear.noalias() +=
        tc_scaled * (stats.first_order(rows) - n * tv.mean(rows));
  }
  // I + positive semidefinite is positive definite.
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw NumericalError("i-vector posterior precision is not positive definite");
  Vector w = llt.solve(linear);
  if (!w.allFinite()) throw NumericalError("non-finite i-vector");
  return w;
}

}  // namespace ivplda
