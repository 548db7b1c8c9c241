// src/experiment.cc

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

#include "ivplda/experiment.h"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "ivplda/enroll.h"
#include "ivplda/gplda.h"
#include "ivplda/parallel.h"
#include "ivplda/preprocess.h"
#include "ivplda/suv.h"
#include "ivplda/synth.h"
#include "json-convert.h"

namespace ivplda {

namespace {

std::string Seconds(double sec) {
  std::ostringstream os;
  os << sec << "sec";
  return os.str();
}

SynthConfig PopulationConfig(const ExperimentConfig &cfg, uint64_t seed) {
  SynthConfig synth;
  synth.seed = seed;
  synth.dim = cfg.dim;
  synth.n_speakers = 1;
  synth.sessions_per_speaker = 1;
  synth.speaker_var = cfg.speaker_var;
  synth.session_var = cfg.session_var;
  synth.utterance_var_per_sec = cfg.utterance_var_per_sec;
  synth.speaker_scales.resize(cfg.dim);
  synth.utterance_scales.resize(cfg.dim);
  for (int i = 0; i < cfg.dim; ++i) {
    synth.speaker_scales[i] =
        cfg.speaker_decay > 0.0 ? std::exp(-i / cfg.speaker_decay) : 1.0;
    synth.utterance_scales[i] = i < cfg.utterance_focus_dims
                                    ? cfg.utterance_focus_scale
                                    : cfg.utterance_background_scale;
  }
  synth.Validate();
  return synth;
}

// Scoring-ready evaluation vectors.
struct EvalData {
  Matrix single_piece, long_single, partitioned;  // k x enrollments
  Matrix tests;                                    // k x tests
  Matrix cohort;                                   // k x cohort
};

EvalData PreprocessEval(const SyntheticDataset &data, const LdaTransform &lda) {
  EvalData eval;
  const int k = lda.output_dim();
  const auto n_enroll = static_cast<Eigen::Index>(data.enroll_pieces.size());
  eval.single_piece.resize(k, n_enroll);
  eval.partitioned.resize(k, n_enroll);
  for (Eigen::Index e = 0; e < n_enroll; ++e) {
    const auto &pieces = data.enroll_pieces[e];
    eval.single_piece.col(e) = LengthNormalize(Project(pieces.front(), lda));
    eval.partitioned.col(e) = EnrolledVector(pieces, lda);
  }
  eval.long_single = LengthNormalizeColumns(Project(data.enroll_long, lda));
  eval.tests = LengthNormalizeColumns(Project(data.tests, lda));
  eval.cohort = LengthNormalizeColumns(Project(data.cohort, lda));
  return eval;
}

std::vector<PldaScorer::Prepared> PrepareColumns(const PldaScorer &scorer,
                                                 const Matrix &columns) {
  std::vector<PldaScorer::Prepared> out;
  out.reserve(columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j)
    out.push_back(scorer.Prepare(columns.col(j)));
  return out;
}

std::vector<CohortMoments> Moments(
    const PldaScorer &scorer, const std::vector<PldaScorer::Prepared> &vectors,
    const std::vector<PldaScorer::Prepared> &cohort) {
  std::vector<CohortMoments> out;
  std::vector<double> list(cohort.size());
  for (const auto &v : vectors) {
    for (size_t c = 0; c < cohort.size(); ++c) list[c] = scorer.Score(v, cohort[c]);
    out.push_back(ComputeCohortMoments(list));
  }
  return out;
}

EvalReport ScoreCondition(const ExperimentConfig &cfg, const PldaScorer &scorer,
                          const Matrix &enrolled, const SyntheticDataset &data,
                          const std::vector<PldaScorer::Prepared> &tests,
                          const std::vector<CohortMoments> &test_moments,
                          const std::vector<PldaScorer::Prepared> &cohort,
                          int workers) {
  const auto enroll = PrepareColumns(scorer, enrolled);
  std::vector<CohortMoments> enroll_moments;
  if (cfg.snorm) enroll_moments = Moments(scorer, enroll, cohort);

  const size_t n_e = enroll.size(), n_t = tests.size();
  Matrix scores(static_cast<Eigen::Index>(n_t), static_cast<Eigen::Index>(n_e));
  ParallelFor(n_e, workers, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i)
      for (size_t j = 0; j < n_t; ++j) {
        double s = scorer.Score(enroll[i], tests[j]);
        if (cfg.snorm) s = SnormValue(s, enroll_moments[i], test_moments[j]);
        scores(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
      }
  });

  std::vector<double> target, nontarget;
  for (size_t i = 0; i < n_e; ++i)
    for (size_t j = 0; j < n_t; ++j) {
      const double s =
          scores(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
      (data.enroll_speaker[i] == data.test_speaker[j] ? target : nontarget)
          .push_back(s);
    }
  return Evaluate(target, nontarget, cfg.cost);
}

}  // namespace

SyntheticDataset GenerateDataset(const ExperimentConfig &cfg, uint64_t seed) {
  cfg.Validate();
  const SynthConfig synth = PopulationConfig(cfg, seed);
  SyntheticDataset data;

  const Eigen::Index n_dev =
      static_cast<Eigen::Index>(cfg.dev_speakers) * cfg.dev_sessions;
  data.dev_full.resize(cfg.dim, n_dev);
  data.dev_short.resize(cfg.dim, n_dev);
  Eigen::Index col = 0;
  for (int s = 0; s < cfg.dev_speakers; ++s) {
    SpeakerSampler sampler(synth, SynthStream::kExperimentDev, s);
    for (int j = 0; j < cfg.dev_sessions; ++j, ++col) {
      const Vector session = sampler.NewSession();
      data.dev_full.col(col) = sampler.Utterance(session, cfg.full_sec);
      data.dev_short.col(col) = sampler.Utterance(session, cfg.suv_short_sec);
      data.dev_speakers.push_back(SpeakerName(s));
    }
  }

  const double piece_sec = cfg.enroll_long_sec / cfg.partitions;
  data.enroll_long.resize(
      cfg.dim, static_cast<Eigen::Index>(cfg.eval_speakers) * cfg.enroll_sessions);
  data.tests.resize(
      cfg.dim, static_cast<Eigen::Index>(cfg.eval_speakers) * cfg.test_sessions);
  Eigen::Index e = 0, t = 0;
  for (int s = 0; s < cfg.eval_speakers; ++s) {
    SpeakerSampler sampler(synth, SynthStream::kExperimentEval, s);
    for (int j = 0; j < cfg.enroll_sessions; ++j, ++e) {
      const Vector session = sampler.NewSession();
      std::vector<Vector> pieces;
      for (int p = 0; p < cfg.partitions; ++p)
        pieces.push_back(sampler.Utterance(session, piece_sec));
      data.enroll_long.col(e) = sampler.Utterance(session, cfg.enroll_long_sec);
      data.enroll_pieces.push_back(std::move(pieces));
      data.enroll_speaker.push_back(s);
    }
    for (int j = 0; j < cfg.test_sessions; ++j, ++t) {
      const Vector session = sampler.NewSession();
      data.tests.col(t) = sampler.Utterance(session, cfg.test_sec);
      data.test_speaker.push_back(s);
    }
  }

  const int cohort_n = std::min(cfg.cohort_size, cfg.cohort_speakers);
  data.cohort.resize(cfg.dim, cohort_n);
  for (int s = 0; s < cohort_n; ++s) {
    SpeakerSampler sampler(synth, SynthStream::kExperimentCohort, s);
    data.cohort.col(s) = sampler.Utterance(sampler.NewSession(), cfg.test_sec);
  }
  return data;
}

void ExperimentConfig::Validate() const {
  if (num_seeds < 1) throw InvalidArgument("num_seeds must be >= 1");
  if (dim < 1 || dev_speakers < 2 || dev_sessions < 2 || eval_speakers < 2 ||
      enroll_sessions < 1 || test_sessions < 1)
    throw InvalidArgument("experiment population sizes are too small");
  if (partitions < 1) throw InvalidArgument("partitions must be >= 1");
  if (!(full_sec > suv_short_sec) || !(suv_short_sec > 0.0) ||
      !(enroll_long_sec > 0.0) || !(test_sec > 0.0))
    throw InvalidArgument("experiment durations are invalid");
  if (utterance_focus_dims < 0 || utterance_focus_dims > dim)
    throw InvalidArgument("utterance_focus_dims must lie in [0, dim]");
  if (lda_dim < 1 || lda_dim > dim || lda_dim > dev_speakers - 1)
    throw InvalidArgument("lda_dim must lie in [1, min(dim, dev_speakers-1)]");
  if (n1 < 1 || n1 > lda_dim) throw InvalidArgument("n1 must lie in [1, lda_dim]");
  if (em_iterations < 1 || suv_copies < 1)
    throw InvalidArgument("em_iterations and suv_copies must be >= 1");
  if (snorm && (cohort_size < 2 || cohort_speakers < 2))
    throw InvalidArgument("S-norm needs a cohort of at least 2");
  cost.Validate();
}

const ConditionResult &ExperimentReport::Find(
    const std::vector<ConditionResult> &rows, const std::string &system,
    const std::string &condition) {
  for (const auto &r : rows)
    if (r.system == system && r.condition == condition) return r;
  throw InvalidArgument(Concat("no result row for ", system, " ", condition));
}

std::string SinglePieceCondition(const ExperimentConfig &cfg) {
  return Seconds(cfg.enroll_long_sec / cfg.partitions) + "-" +
         Seconds(cfg.test_sec);
}

std::string LongCondition(const ExperimentConfig &cfg) {
  return Seconds(cfg.enroll_long_sec) + "-" + Seconds(cfg.test_sec);
}

std::string PartitionedCondition(const ExperimentConfig &cfg) {
  return Concat(Seconds(cfg.enroll_long_sec / cfg.partitions), "(",
                cfg.partitions, ")-", Seconds(cfg.test_sec));
}

SeedResult RunExperimentSeed(const ExperimentConfig &cfg, uint64_t seed,
                             int workers) {
  const SyntheticDataset data = GenerateDataset(cfg, seed);

  const LdaTransform lda = TrainLda(data.dev_full, data.dev_speakers, cfg.lda_dim);
  const Matrix projected = Project(data.dev_full, lda);

  TrainConfig train;
  train.n1 = cfg.n1;
  train.em_iterations = cfg.em_iterations;
  train.seed = seed;
  const GpldaModel baseline =
      TrainGplda(LengthNormalizeColumns(projected), data.dev_speakers, train);

  const SuvModel suv = EstimateSuv(data.dev_full, data.dev_short, lda);
  Engine suv_engine =
      MakeEngine({seed, static_cast<uint64_t>(SynthStream::kExperimentSuv)});
  const Matrix augmented =
      AugmentColumns(projected, suv, suv_engine(), cfg.suv_copies);
  std::vector<std::string> augmented_speakers;
  for (const auto &s : data.dev_speakers)
    augmented_speakers.insert(augmented_speakers.end(), cfg.suv_copies, s);
  const GpldaModel suv_model =
      TrainGplda(LengthNormalizeColumns(augmented), augmented_speakers, train);

  const EvalData eval = PreprocessEval(data, lda);

  SeedResult result;
  result.seed = seed;
  const std::pair<const char *, const GpldaModel *> systems[] = {
      {"GPLDA", &baseline}, {"SUV-GPLDA", &suv_model}};
  for (const auto &[name, model] : systems) {
    const PldaScorer scorer(*model);
    const auto tests = PrepareColumns(scorer, eval.tests);
    std::vector<PldaScorer::Prepared> cohort;
    std::vector<CohortMoments> test_moments;
    if (cfg.snorm) {
      cohort = PrepareColumns(scorer, eval.cohort);
      test_moments = Moments(scorer, tests, cohort);
    }
    const std::tuple<std::string, const Matrix *, bool> conditions[] = {
        {SinglePieceCondition(cfg), &eval.single_piece, false},
        {LongCondition(cfg), &eval.long_single, false},
        {PartitionedCondition(cfg), &eval.partitioned, true}};
    for (const auto &[label, enrolled, partitioned] : conditions) {
      const EvalReport r = ScoreCondition(cfg, scorer, *enrolled, data, tests,
                                          test_moments, cohort, workers);
      result.rows.push_back({name, label, partitioned, r.eer, r.min_dcf});
    }
  }
  return result;
}

ExperimentReport RunExperiment(const ExperimentConfig &cfg, int workers) {
  cfg.Validate();
  ExperimentReport report;
  report.config = cfg;
  for (int i = 0; i < cfg.num_seeds; ++i)
    report.seeds.push_back(
        RunExperimentSeed(cfg, cfg.seed + static_cast<uint64_t>(i), workers));
  report.mean = report.seeds.front().rows;
  for (size_t r = 0; r < report.mean.size(); ++r) {
    double eer = 0.0, dcf = 0.0;
    for (const auto &s : report.seeds) {
      eer += s.rows[r].eer;
      dcf += s.rows[r].min_dcf;
    }
    report.mean[r].eer = eer / cfg.num_seeds;
    report.mean[r].min_dcf = dcf / cfg.num_seeds;
  }
  return report;
}

namespace {

nlohmann::ordered_json RowsToJson(const std::vector<ConditionResult> &rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto &r : rows)
    out.push_back({{"system", r.system},
                   {"condition", r.condition},
                   {"partitioned", r.partitioned},
                   {"eer", r.eer},
                   {"min_dcf", r.min_dcf}});
  return out;
}

}  // namespace

std::string ReportToJson(const ExperimentReport &report) {
  nlohmann::ordered_json j;
  j["config"] = ExperimentToJson(report.config);
  j["seeds"] = nlohmann::ordered_json::array();
  for (const auto &s : report.seeds)
    j["seeds"].push_back({{"seed", s.seed}, {"rows", RowsToJson(s.rows)}});
  j["mean"] = RowsToJson(report.mean);
  return j.dump(2) + "\n";
}

std::string ReportToText(const ExperimentReport &report) {
  std::ostringstream os;
  const int num_seeds = static_cast<int>(report.seeds.size());
  os << "Synthetic evaluation, mean over " << num_seeds << " seed"
     << (num_seeds == 1 ? "" : "s") << " (" << report.config.seed << ".."
     << report.config.seed + num_seeds - 1 << ")\n";
  constexpr int kLabelWidth = 28, kColWidth = 10;
  const std::string rule(kLabelWidth + 2 * kColWidth, '-');
  os << rule << '\n'
     << std::left << std::setw(kLabelWidth) << "Evaluation utterance lengths"
     << std::right << std::setw(kColWidth) << "EER" << std::setw(kColWidth)
     << "DCF" << '\n'
     << rule << '\n';
  std::string current_block;
  for (const auto &r : report.mean) {
    const std::string block = (r.partitioned ? "Utterance-partitioning-based "
                                             : "Standard ") +
                              r.system + " system";
    if (block != current_block) {
      os << block << '\n';
      current_block = block;
    }
    char eer[32], dcf[32];
    std::snprintf(eer, sizeof(eer), "%.2f%%", 100.0 * r.eer);
    std::snprintf(dcf, sizeof(dcf), "%.4f", r.min_dcf);
    os << "  " << std::left << std::setw(kLabelWidth - 2) << r.condition
       << std::right << std::setw(kColWidth) << eer << std::setw(kColWidth)
       << dcf << '\n';
  }
  os << rule << '\n';
  return os.str();
}

}  // namespace ivplda
