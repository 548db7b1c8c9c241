// include/ivplda/gplda.h

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

#ifndef IVPLDA_GPLDA_H_
#define IVPLDA_GPLDA_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/vectorstore.h"

namespace ivplda {

/// Gaussian PLDA in eigenvoice form:
///   w = mean + U1 x + e,   x ~ N(0, I),   e ~ N(0, Lambda^-1)
/// with a full-rank precision Lambda.
struct GpldaModel {
  Vector mean;    // k
  Matrix u1;      // k x N1
  Matrix lambda;  // k x k, symmetric positive definite

  int dim() const { return static_cast<int>(mean.size()); }
  int n1() const { return static_cast<int>(u1.cols()); }

  void Validate() const;

  MatrixArchive ToArchive() const;  // "mean", "U1", "Lambda"
  static GpldaModel FromArchive(const MatrixArchive &archive);
};

struct TrainConfig {
  int n1 = 120;
  int em_iterations = 20;
  // Training is a deterministic function of the data; the seed is carried
  // so that configurations round-trip and future random inits stay keyed.
  uint64_t seed = 0;
  int min_utts_per_speaker = 2;
};

/// Observed-data log-likelihood of the training set, entry t evaluated
/// with the parameters after t EM iterations (entry 0 = initialization).
struct TrainLog {
  std::vector<double> log_likelihood;
  int speakers_used = 0;
  int vectors_used = 0;
};

/// EM training on preprocessed vectors (columns of `data`).  Speakers with
/// fewer than cfg.min_utts_per_speaker vectors are skipped.  U1 starts
/// from the top-N1 eigenvectors of the between-speaker scatter scaled by
/// the square roots of their eigenvalues; Lambda from the inverse
/// within-speaker covariance.
GpldaModel TrainGplda(const Matrix &data,
                      const std::vector<std::string> &speakers,
                      const TrainConfig &cfg, TrainLog *log = nullptr);

/// Observed-data log-likelihood of `data` under `model`.
double GpldaLogLikelihood(const GpldaModel &model, const Matrix &data,
                          const std::vector<std::string> &speakers);

/// Closed-form batch likelihood ratio.  With B = U1 U1', T = B + Lambda^-1
/// and S = T - B T^-1 B, and centered inputs a, b:
///   llr = a'Qa/2 + b'Qb/2 + a'Pb + (log|T| - log|S|)/2
///   Q = T^-1 - S^-1,  P = T^-1 B S^-1
class PldaScorer {
 public:
  explicit PldaScorer(const GpldaModel &model);

  int dim() const { return static_cast<int>(mean_.size()); }

  double Score(const Vector &target, const Vector &test) const;

  /// Per-vector terms reused across many trials.
  struct Prepared {
    Vector centered;
    Vector p_times;  // P * centered
    double half_quad = 0.0;
  };
  Prepared Prepare(const Vector &w) const;
  double Score(const Prepared &target, const Prepared &test) const;

 private:
  Vector mean_;
  Matrix q_, p_;
  double offset_ = 0.0;
};

double Score(const Vector &target, const Vector &test, const GpldaModel &model);

using VectorMap = std::unordered_map<std::string, Vector>;

/// One score per trial, trial order preserved.  Unknown ids raise
/// InvalidArgument naming the id.  Output is identical for any `workers`.
ScoreSet ScoreTrials(const std::vector<Trial> &trials, const VectorMap &enrolled,
                     const VectorMap &tests, const GpldaModel &model,
                     int workers = 1);

using CohortScoreMap = std::unordered_map<std::string, std::vector<double>>;

/// Scores every vector in `vectors` against each column of `cohort`.
CohortScoreMap ScoreAgainstCohort(const VectorMap &vectors,
                                  const Matrix &cohort,
                                  const GpldaModel &model, int workers = 1);

/// Mean and population standard deviation of one side's cohort scores.
struct CohortMoments {
  double mean = 0.0;
  double sd = 1.0;
};
/// Throws InvalidArgument for fewer than 2 scores or zero spread.
CohortMoments ComputeCohortMoments(std::span<const double> cohort_scores);

inline double SnormValue(double raw, const CohortMoments &enrol,
                         const CohortMoments &test) {
  return 0.5 * ((raw - enrol.mean) / enrol.sd + (raw - test.mean) / test.sd);
}

/// Symmetric score normalization:
///   s' = ((s - mu_e) / sigma_e + (s - mu_t) / sigma_t) / 2
/// using the mean and population standard deviation of each side's
/// cohort scores.  Each cohort list needs >= 2 entries and sigma > 0.
ScoreSet Snorm(const ScoreSet &raw, const CohortScoreMap &enrol_cohort,
               const CohortScoreMap &test_cohort);

}  // namespace ivplda

#endif  // IVPLDA_GPLDA_H_
