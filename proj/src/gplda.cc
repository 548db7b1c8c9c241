// src/gplda.cc

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

#include "ivplda/gplda.h"

#include <cmath>
#include <map>
#include <numbers>

#include "ivplda/parallel.h"

namespace ivplda {

namespace {

double LogDet(const Eigen::LLT<Matrix> &llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Eigen::LLT<Matrix> CholeskyOrThrow(const Matrix &m, const char *what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericalError(Concat(what, " is not positive definite"));
  return llt;
}

Matrix Symmetrized(const Matrix &m) { return 0.5 * (m + m.transpose()); }

// Training data reduced to what EM needs: per-speaker centered sums, the
// total centered scatter and speaker groups keyed by session count.
struct SufficientStats {
  int dim = 0;
  int num_vectors = 0;
  Vector mean;
  Matrix speaker_sums;            // k x S, sum of (w - mean)
  std::vector<int> counts;        // sessions per speaker
  Matrix scatter;                 // sum over vectors of (w-mean)(w-mean)'
  std::map<int, std::vector<int>> by_count;  // count -> speaker indices
};

SufficientStats CollectStats(const Matrix &data,
                             const std::vector<std::string> &speakers,
                             int min_utts) {
  if (static_cast<size_t>(data.cols()) != speakers.size())
    throw InvalidArgument(Concat("PLDA: ", data.cols(), " vectors but ",
                                 speakers.size(), " speaker labels"));
  if (!data.allFinite()) throw InvalidArgument("PLDA: non-finite input");
  std::vector<std::vector<int>> groups;
  for (auto &g : GroupBySpeaker(speakers))
    if (static_cast<int>(g.size()) >= min_utts) groups.push_back(std::move(g));
  if (groups.size() < 2)
    throw InvalidArgument(Concat("PLDA needs at least 2 speakers with >= ",
                                 min_utts, " utterances, got ", groups.size()));

  SufficientStats st;
  st.dim = static_cast<int>(data.rows());
  std::vector<int> used;
  for (const auto &g : groups) used.insert(used.end(), g.begin(), g.end());
  st.num_vectors = static_cast<int>(used.size());
  st.mean = data(Eigen::all, used).rowwise().mean();
  const Matrix centered = data(Eigen::all, used).colwise() - st.mean;
  st.scatter = Symmetrized(centered * centered.transpose());

  st.speaker_sums.resize(st.dim, static_cast<Eigen::Index>(groups.size()));
  for (size_t s = 0; s < groups.size(); ++s) {
    st.speaker_sums.col(s) =
        (data(Eigen::all, groups[s]).colwise() - st.mean).rowwise().sum();
    st.counts.push_back(static_cast<int>(groups[s].size()));
    st.by_count[st.counts.back()].push_back(static_cast<int>(s));
  }
  return st;
}

// One E-step.  Fills the M-step accumulators and returns the observed-data
// log-likelihood at the current parameters.
double EStep(const SufficientStats &st, const Matrix &u, const Matrix &lambda,
             Matrix *r_acc, Matrix *c_acc) {
  const int k = st.dim, n1 = static_cast<int>(u.cols());
  const Matrix ul = u.transpose() * lambda;  // N1 x k
  const Matrix ulu = Symmetrized(ul * u);
  const auto lambda_llt = CholeskyOrThrow(lambda, "PLDA precision");

  r_acc->setZero(n1, n1);
  c_acc->setZero(k, n1);
  double ll = -0.5 * st.num_vectors *
                  (k * std::log(2.0 * std::numbers::pi) - LogDet(lambda_llt)) -
              0.5 * (lambda.cwiseProduct(st.scatter)).sum();

  for (const auto &[count, members] : st.by_count) {
    const Matrix precision =
        Matrix::Identity(n1, n1) + static_cast<double>(count) * ulu;
    const auto llt = CholeskyOrThrow(precision, "speaker posterior precision");
    const Matrix cov = llt.solve(Matrix::Identity(n1, n1));
    const Matrix linear = ul * st.speaker_sums(Eigen::all, members);
    const Matrix ex = llt.solve(linear);  // N1 x members
    *r_acc += static_cast<double>(count) *
              (static_cast<double>(members.size()) * cov + ex * ex.transpose());
    c_acc->noalias() += st.speaker_sums(Eigen::all, members) * ex.transpose();
    ll += 0.5 * linear.cwiseProduct(ex).sum() -
          0.5 * static_cast<double>(members.size()) * LogDet(llt);
  }
  return ll;
}

Matrix InverseSpd(const Matrix &m, const char *what) {
  const auto llt = CholeskyOrThrow(m, what);
  return Symmetrized(llt.solve(Matrix::Identity(m.rows(), m.cols())));
}

}  // namespace

void GpldaModel::Validate() const {
  const Eigen::Index k = mean.size();
  if (k == 0) throw InvalidArgument("PLDA model is empty");
  if (u1.rows() != k || lambda.rows() != k || lambda.cols() != k)
    throw InvalidArgument("PLDA model sections have inconsistent shapes");
  if (u1.cols() > k) throw InvalidArgument("PLDA N1 exceeds dimension");
  if (!mean.allFinite() || !u1.allFinite() || !lambda.allFinite())
    throw InvalidArgument("PLDA model has non-finite entries");
  if ((lambda - lambda.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("PLDA precision is not symmetric");
  if (Eigen::LLT<Matrix>(lambda).info() != Eigen::Success)
    throw InvalidArgument("PLDA precision is not positive definite");
}

MatrixArchive GpldaModel::ToArchive() const {
  MatrixArchive archive;
  archive.Put("mean", mean);
  archive.Put("U1", u1);
  archive.Put("Lambda", lambda);
  return archive;
}

GpldaModel GpldaModel::FromArchive(const MatrixArchive &archive) {
  GpldaModel model;
  const Matrix &mean = archive.Get("mean");
  if (mean.cols() != 1) throw FormatError("section \"mean\" must be a column");
  model.mean = mean.col(0);
  model.u1 = archive.Get("U1");
  model.lambda = archive.Get("Lambda");
  try {
    model.Validate();
  } catch (const InvalidArgument &e) {
    throw FormatError(e.what());
  }
  return model;
}

GpldaModel TrainGplda(const Matrix &data,
                      const std::vector<std::string> &speakers,
                      const TrainConfig &cfg, TrainLog *log) {
  if (cfg.n1 <= 0) throw InvalidArgument("N1 must be positive");
  if (cfg.em_iterations < 1) throw InvalidArgument("em_iterations must be >= 1");
  if (cfg.min_utts_per_speaker < 1)
    throw InvalidArgument("min_utts_per_speaker must be >= 1");
  if (cfg.n1 > data.rows())
    throw InvalidArgument(Concat("N1 = ", cfg.n1, " exceeds dimension ",
                                 data.rows()));
  const SufficientStats st =
      CollectStats(data, speakers, cfg.min_utts_per_speaker);
  const int k = st.dim;
  const auto num_speakers = static_cast<double>(st.counts.size());

  // Initialization from between/within scatter.
  Matrix between = Matrix::Zero(k, k), within = st.scatter;
  for (Eigen::Index s = 0; s < st.speaker_sums.cols(); ++s) {
    const double n = st.counts[s];
    const Vector spk_mean = st.speaker_sums.col(s) / n;
    between.noalias() += spk_mean * spk_mean.transpose();
    within.noalias() -= n * spk_mean * spk_mean.transpose();
  }
  between = Symmetrized(between / num_speakers);
  within = Symmetrized(within / st.num_vectors);

  Eigen::SelfAdjointEigenSolver<Matrix> between_eig(between);
  GpldaModel model;
  model.mean = st.mean;
  model.u1.resize(k, cfg.n1);
  for (int j = 0; j < cfg.n1; ++j) {
    const Eigen::Index col = k - 1 - j;
    model.u1.col(j) = between_eig.eigenvectors().col(col) *
                      std::sqrt(std::max(between_eig.eigenvalues()(col), 0.0));
  }
  if (Eigen::LLT<Matrix>(within).info() != Eigen::Success ||
      within.diagonal().minCoeff() <= 0.0) {
    const double ridge = 1e-6 * std::max(within.trace() / k, 1e-300);
    Warn(Concat("PLDA: within-speaker covariance is singular; added ridge ",
                ridge));
    within.diagonal().array() += ridge;
  }
  model.lambda = InverseSpd(within, "within-speaker covariance");

  if (log) {
    log->log_likelihood.clear();
    log->speakers_used = static_cast<int>(st.counts.size());
    log->vectors_used = st.num_vectors;
  }

  Matrix r_acc, c_acc;
  for (int iter = 0; iter < cfg.em_iterations; ++iter) {
    const double ll = EStep(st, model.u1, model.lambda, &r_acc, &c_acc);
    if (log) log->log_likelihood.push_back(ll);

    // M-step: U = C R^-1, Lambda^-1 = (S - U C') / N.
    const auto r_llt = CholeskyOrThrow(Symmetrized(r_acc), "EM accumulator R");
    model.u1 = r_llt.solve(c_acc.transpose()).transpose();
    Matrix residual =
        Symmetrized(st.scatter - model.u1 * c_acc.transpose()) / st.num_vectors;
    model.lambda = InverseSpd(residual, "PLDA residual covariance");
  }
  if (log) {
    Matrix r_unused, c_unused;
    log->log_likelihood.push_back(
        EStep(st, model.u1, model.lambda, &r_unused, &c_unused));
  }
  return model;
}

double GpldaLogLikelihood(const GpldaModel &model, const Matrix &data,
                          const std::vector<std::string> &speakers) {
  model.Validate();
  if (data.rows() != model.dim())
    throw InvalidArgument("data dimension does not match PLDA model");
  SufficientStats st = CollectStats(data, speakers, 1);
  // CollectStats centers on the sample mean; re-center on the model mean.
  const Vector shift = st.mean - model.mean;
  const Matrix raw_sums = st.speaker_sums;
  st.scatter += st.num_vectors * shift * shift.transpose() +
                shift * raw_sums.rowwise().sum().transpose() +
                raw_sums.rowwise().sum() * shift.transpose();
  for (Eigen::Index s = 0; s < st.speaker_sums.cols(); ++s)
    st.speaker_sums.col(s) += st.counts[s] * shift;
  Matrix r_unused, c_unused;
  return EStep(st, model.u1, model.lambda, &r_unused, &c_unused);
}

PldaScorer::PldaScorer(const GpldaModel &model) : mean_(model.mean) {
  model.Validate();
  const Eigen::Index k = model.dim();
  const Matrix between = Symmetrized(model.u1 * model.u1.transpose());
  const Matrix total =
      between + InverseSpd(model.lambda, "PLDA precision");
  const auto total_llt = CholeskyOrThrow(total, "total covariance");
  const Matrix total_inv =
      Symmetrized(total_llt.solve(Matrix::Identity(k, k)));
  const Matrix conditional =
      Symmetrized(total - between * total_inv * between);
  const auto cond_llt = CholeskyOrThrow(conditional, "conditional covariance");
  const Matrix cond_inv = Symmetrized(cond_llt.solve(Matrix::Identity(k, k)));
  q_ = Symmetrized(total_inv - cond_inv);
  p_ = Symmetrized(total_inv * between * cond_inv);
  offset_ = 0.5 * (LogDet(total_llt) - LogDet(cond_llt));
}

PldaScorer::Prepared PldaScorer::Prepare(const Vector &w) const {
  if (w.size() != mean_.size())
    throw InvalidArgument(Concat("vector dim ", w.size(),
                                 " does not match PLDA dim ", mean_.size()));
  if (!w.allFinite()) throw InvalidArgument("non-finite vector in scoring");
  Prepared p;
  p.centered = w - mean_;
  p.p_times = p_ * p.centered;
  p.half_quad = 0.5 * p.centered.dot(q_ * p.centered);
  return p;
}

double PldaScorer::Score(const Prepared &target, const Prepared &test) const {
  return (target.half_quad + test.half_quad) +
         target.p_times.dot(test.centered) + offset_;
}

double PldaScorer::Score(const Vector &target, const Vector &test) const {
  return Score(Prepare(target), Prepare(test));
}

double Score(const Vector &target, const Vector &test, const GpldaModel &model) {
  return PldaScorer(model).Score(target, test);
}

namespace {

using PreparedMap = std::unordered_map<std::string, PldaScorer::Prepared>;

PreparedMap PrepareAll(const VectorMap &vectors, const PldaScorer &scorer) {
  PreparedMap out;
  out.reserve(vectors.size());
  for (const auto &[id, v] : vectors) out.emplace(id, scorer.Prepare(v));
  return out;
}

}  // namespace

ScoreSet ScoreTrials(const std::vector<Trial> &trials, const VectorMap &enrolled,
                     const VectorMap &tests, const GpldaModel &model,
                     int workers) {
  for (const auto &t : trials) {
    if (!enrolled.count(t.enrol_id))
      throw InvalidArgument(Concat("unknown enrollment id ", t.enrol_id));
    if (!tests.count(t.test_id))
      throw InvalidArgument(Concat("unknown test id ", t.test_id));
  }
  const PldaScorer scorer(model);
  const PreparedMap enrol_prepared = PrepareAll(enrolled, scorer);
  const PreparedMap test_prepared = PrepareAll(tests, scorer);
  std::vector<double> values(trials.size());
  ParallelFor(trials.size(), workers, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i)
      values[i] = scorer.Score(enrol_prepared.at(trials[i].enrol_id),
                               test_prepared.at(trials[i].test_id));
  });
  ScoreSet scores;
  for (size_t i = 0; i < trials.size(); ++i)
    scores.Add(trials[i].enrol_id, trials[i].test_id, values[i]);
  return scores;
}

CohortScoreMap ScoreAgainstCohort(const VectorMap &vectors,
                                  const Matrix &cohort,
                                  const GpldaModel &model, int workers) {
  const PldaScorer scorer(model);
  std::vector<PldaScorer::Prepared> cohort_prepared;
  for (Eigen::Index j = 0; j < cohort.cols(); ++j)
    cohort_prepared.push_back(scorer.Prepare(cohort.col(j)));

  std::vector<const std::string *> ids;
  for (const auto &[id, v] : vectors) ids.push_back(&id);
  std::vector<std::vector<double>> lists(ids.size());
  ParallelFor(ids.size(), workers, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto prepared = scorer.Prepare(vectors.at(*ids[i]));
      lists[i].reserve(cohort_prepared.size());
      for (const auto &c : cohort_prepared)
        lists[i].push_back(scorer.Score(prepared, c));
    }
  });
  CohortScoreMap out;
  for (size_t i = 0; i < ids.size(); ++i) out.emplace(*ids[i], std::move(lists[i]));
  return out;
}

CohortMoments ComputeCohortMoments(std::span<const double> cohort_scores) {
  if (cohort_scores.size() < 2)
    throw InvalidArgument("cohort needs at least 2 scores");
  double mean = 0.0;
  for (double s : cohort_scores) mean += s;
  mean /= static_cast<double>(cohort_scores.size());
  double var = 0.0;
  for (double s : cohort_scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(cohort_scores.size());
  const double sd = std::sqrt(var);
  if (!(sd > 0.0) || !std::isfinite(sd))
    throw InvalidArgument("cohort scores have zero standard deviation");
  return {mean, sd};
}

namespace {

CohortMoments LookupMoments(const CohortScoreMap &cohort, const std::string &id,
                            const char *side) {
  auto it = cohort.find(id);
  if (it == cohort.end())
    throw InvalidArgument(Concat("missing ", side, " cohort scores for ", id));
  try {
    return ComputeCohortMoments(it->second);
  } catch (const InvalidArgument &e) {
    throw InvalidArgument(Concat(side, " cohort for ", id, ": ", e.what()));
  }
}

}  // namespace

ScoreSet Snorm(const ScoreSet &raw, const CohortScoreMap &enrol_cohort,
               const CohortScoreMap &test_cohort) {
  std::unordered_map<std::string, CohortMoments> enrol_stats, test_stats;
  ScoreSet out;
  for (const auto &e : raw.entries()) {
    auto eit = enrol_stats.find(e.enrol_id);
    if (eit == enrol_stats.end())
      eit = enrol_stats
                .emplace(e.enrol_id, LookupMoments(enrol_cohort, e.enrol_id, "enrol"))
                .first;
    auto tit = test_stats.find(e.test_id);
    if (tit == test_stats.end())
      tit = test_stats
                .emplace(e.test_id, LookupMoments(test_cohort, e.test_id, "test"))
                .first;
    out.Add(e.enrol_id, e.test_id,
            SnormValue(e.score, eit->second, tit->second));
  }
  return out;
}

}  // namespace ivplda
