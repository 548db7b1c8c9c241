// tools/ivplda.cc

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

// Command-line front end: one binary, one subcommand per pipeline stage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ivplda/enroll.h"
#include "ivplda/eval.h"
#include "ivplda/experiment.h"
#include "ivplda/file-util.h"
#include "ivplda/gplda.h"
#include "ivplda/matrix-archive.h"
#include "ivplda/preprocess.h"
#include "ivplda/run-config.h"
#include "ivplda/suv.h"
#include "ivplda/synth.h"
#include "ivplda/tv-space.h"
#include "ivplda/vectorstore.h"
#include "json.hpp"

namespace {

using namespace ivplda;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

// Flags shared by every subcommand.
struct CommonFlags {
  std::string config;
  std::string log;
  std::optional<uint64_t> seed;
  std::optional<int> workers;
};

void AddCommonFlags(CLI::App *cmd, CommonFlags *flags) {
  cmd->add_option("--config", flags->config, "JSON run configuration");
  cmd->add_option("--log", flags->log,
                  "Run log path (default: <primary output>.log)");
  cmd->add_option("--seed", flags->seed, "Random seed");
  cmd->add_option("--workers", flags->workers, "Worker threads");
}

RunConfig ResolveConfig(const CommonFlags &flags) {
  RunConfig cfg;
  if (!flags.config.empty()) cfg = RunConfig::FromFile(flags.config);
  if (flags.seed) {
    cfg.seed = *flags.seed;
    cfg.experiment.seed = *flags.seed;
  }
  if (flags.workers) cfg.workers = *flags.workers;
  if (cfg.workers < 1) throw InvalidArgument("workers must be >= 1");
  return cfg;
}

// Flag value if given, else the config "paths" entry.
std::string PathOr(const std::string &flag, const RunConfig &cfg,
                   const std::string &key, bool required) {
  std::string path = flag.empty() ? cfg.Path(key) : flag;
  if (required && path.empty())
    throw InvalidArgument(Concat("missing --", key, " (or paths.", key,
                                 " in the config)"));
  return path;
}

void WriteRunLog(const CommonFlags &flags, const std::string &primary_output,
                 const std::string &command, const ordered_json &inputs,
                 const RunConfig &cfg) {
  const std::string path =
      flags.log.empty() ? primary_output + ".log" : flags.log;
  ordered_json log;
  log["command"] = command;
  log["inputs"] = inputs;
  log["config"] = ordered_json::parse(cfg.ToJson());
  const std::string text = log.dump(2) + "\n";
  WriteFileAtomically(path, [&](std::ostream &os) { os << text; }, false);
}

Vector ToDouble(const IVector &v) { return v.values.cast<double>(); }

// LDA projection (when given) followed by length normalization.
VectorMap PreprocessSet(const IVectorSet &set, const LdaTransform *lda) {
  VectorMap out;
  out.reserve(set.size());
  for (const auto &e : set.entries()) {
    Vector v = ToDouble(e);
    if (lda) v = Project(v, *lda);
    out.emplace(e.utterance_id, LengthNormalize(v));
  }
  return out;
}

std::optional<LdaTransform> MaybeLda(const std::string &path) {
  if (path.empty()) return std::nullopt;
  return LdaTransform::FromArchive(MatrixArchive::ReadFile(path));
}

Matrix CohortMatrix(const std::string &path, int cohort_size,
                    const LdaTransform *lda) {
  if (cohort_size < 2) throw InvalidArgument("cohort size must be >= 2");
  const IVectorSet cohort = ReadIvectors(fs::path(path));
  const size_t n = std::min<size_t>(cohort.size(), cohort_size);
  if (n < 2) throw InvalidArgument("cohort file has fewer than 2 vectors");
  Matrix m;
  for (size_t i = 0; i < n; ++i) {
    Vector v = ToDouble(cohort[i]);
    if (lda) v = Project(v, *lda);
    v = LengthNormalize(v);
    if (i == 0) m.resize(v.size(), static_cast<Eigen::Index>(n));
    m.col(static_cast<Eigen::Index>(i)) = v;
  }
  return m;
}

ScoreSet ApplySnorm(const ScoreSet &raw, const VectorMap &enrolled,
                    const VectorMap &tests, const Matrix &cohort,
                    const GpldaModel &model, int workers) {
  VectorMap enrol_used, test_used;
  for (const auto &e : raw.entries()) {
    auto eit = enrolled.find(e.enrol_id);
    if (eit == enrolled.end())
      throw InvalidArgument(Concat("unknown enrollment id ", e.enrol_id));
    enrol_used.emplace(*eit);
    auto tit = tests.find(e.test_id);
    if (tit == tests.end())
      throw InvalidArgument(Concat("unknown test id ", e.test_id));
    test_used.emplace(*tit);
  }
  return Snorm(raw, ScoreAgainstCohort(enrol_used, cohort, model, workers),
               ScoreAgainstCohort(test_used, cohort, model, workers));
}

// ---------------------------------------------------------------- synth

struct SynthFlags {
  CommonFlags common;
  std::string out_dir;
  std::optional<int> partitions;
};

void RunSynth(const SynthFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.partitions) cfg.experiment.partitions = *flags.partitions;
  const ExperimentConfig &ex = cfg.experiment;
  const SyntheticDataset data = GenerateDataset(ex, ex.seed);
  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);

  IVectorSet dev(ex.dim), dev_short(ex.dim);
  for (Eigen::Index i = 0; i < data.dev_full.cols(); ++i) {
    const std::string spk = "dev-" + data.dev_speakers[i];
    const std::string utt = Concat(spk, "-s", i % ex.dev_sessions);
    dev.Add(data.dev_full.col(i), utt + "-full", spk, ex.full_sec);
    dev_short.Add(data.dev_short.col(i), utt + "-short", spk, ex.suv_short_sec);
  }

  const double piece_sec = ex.enroll_long_sec / ex.partitions;
  IVectorSet single(ex.dim), whole(ex.dim), pieces(ex.dim);
  std::ostringstream map_text;
  std::vector<std::string> enroll_ids;
  for (size_t e = 0; e < data.enroll_pieces.size(); ++e) {
    const std::string spk = "eval-" + SpeakerName(data.enroll_speaker[e]);
    const std::string id = Concat(spk, "-e", e % ex.enroll_sessions);
    enroll_ids.push_back(id);
    single.Add(data.enroll_pieces[e].front(), id, spk, piece_sec);
    whole.Add(data.enroll_long.col(static_cast<Eigen::Index>(e)), id, spk,
              ex.enroll_long_sec);
    map_text << id;
    for (size_t p = 0; p < data.enroll_pieces[e].size(); ++p) {
      const std::string piece_id = Concat(id, "-p", p);
      pieces.Add(data.enroll_pieces[e][p], piece_id, spk, piece_sec);
      map_text << ' ' << piece_id;
    }
    map_text << '\n';
  }

  IVectorSet tests(ex.dim), cohort(ex.dim);
  for (Eigen::Index t = 0; t < data.tests.cols(); ++t) {
    const std::string spk = "eval-" + SpeakerName(data.test_speaker[t]);
    tests.Add(data.tests.col(t), Concat(spk, "-t", t % ex.test_sessions), spk,
              ex.test_sec);
  }
  for (Eigen::Index c = 0; c < data.cohort.cols(); ++c) {
    const std::string spk = "cohort-" + SpeakerName(static_cast<int>(c));
    cohort.Add(data.cohort.col(c), spk + "-u0", spk, ex.test_sec);
  }

  std::vector<Trial> trials;
  trials.reserve(single.size() * tests.size());
  for (const auto &e : single.entries())
    for (const auto &t : tests.entries())
      trials.push_back({e.utterance_id, t.utterance_id,
                        e.speaker_id == t.speaker_id ? TrialLabel::kTarget
                                                     : TrialLabel::kNontarget});

  WriteIvectors(dev, dir / "dev.ivec");
  WriteIvectors(dev_short, dir / "dev_short.ivec");
  WriteIvectors(single, dir / "enroll_single.ivec");
  WriteIvectors(whole, dir / "enroll_long.ivec");
  WriteIvectors(pieces, dir / "enroll_pieces.ivec");
  const std::string map = map_text.str();
  WriteFileAtomically(dir / "enroll_pieces.map",
                      [&](std::ostream &os) { os << map; }, false);
  WriteIvectors(tests, dir / "test.ivec");
  WriteIvectors(cohort, dir / "cohort.ivec");
  WriteTrials(trials, dir / "trials.txt");

  WriteRunLog(flags.common, (dir / "synth").string(), "synth",
              {{"out_dir", flags.out_dir}}, cfg);
}

// ------------------------------------------------------------- train-lda

struct TrainLdaFlags {
  CommonFlags common;
  std::string ivectors, out;
  std::optional<int> dim;
};

void RunTrainLda(const TrainLdaFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.dim) cfg.lda_dim = *flags.dim;
  const std::string in = PathOr(flags.ivectors, cfg, "ivectors", true);
  const std::string out = PathOr(flags.out, cfg, "lda", true);
  const LdaTransform lda = TrainLda(ReadIvectors(fs::path(in)), cfg.lda_dim);
  lda.ToArchive().WriteFile(out);
  WriteRunLog(flags.common, out, "train-lda",
              {{"ivectors", in}, {"out", out}, {"ridge_used", lda.ridge_used}},
              cfg);
}

// ------------------------------------------------------------ train-plda

struct TrainPldaFlags {
  CommonFlags common;
  std::string ivectors, lda, suv, out;
  std::optional<int> n1, iters, copies, min_utts;
};

void RunTrainPlda(const TrainPldaFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.n1) cfg.n1 = *flags.n1;
  if (flags.iters) cfg.em_iterations = *flags.iters;
  if (flags.copies) cfg.suv.copies = *flags.copies;
  const std::string in = PathOr(flags.ivectors, cfg, "ivectors", true);
  const std::string lda_path = PathOr(flags.lda, cfg, "lda", false);
  const std::string suv_path = flags.suv;
  const std::string out = PathOr(flags.out, cfg, "plda", true);

  const IVectorSet set = ReadIvectors(fs::path(in));
  const auto lda = MaybeLda(lda_path);
  Matrix data = set.AsMatrix();
  std::vector<std::string> speakers = set.SpeakerIds();
  if (lda) data = Project(data, *lda);
  if (!suv_path.empty()) {
    const SuvModel suv = SuvModel::FromArchive(MatrixArchive::ReadFile(suv_path));
    data = AugmentColumns(data, suv, cfg.seed, cfg.suv.copies);
    std::vector<std::string> repeated;
    for (const auto &s : speakers)
      repeated.insert(repeated.end(), cfg.suv.copies, s);
    speakers = std::move(repeated);
  }
  TrainConfig train;
  train.n1 = cfg.n1;
  train.em_iterations = cfg.em_iterations;
  train.seed = cfg.seed;
  if (flags.min_utts) train.min_utts_per_speaker = *flags.min_utts;
  TrainLog log;
  const GpldaModel model =
      TrainGplda(LengthNormalizeColumns(data), speakers, train, &log);
  model.ToArchive().WriteFile(out);
  WriteRunLog(flags.common, out, "train-plda",
              {{"ivectors", in},
               {"lda", lda_path},
               {"suv", suv_path},
               {"out", out},
               {"min_utts_per_speaker", train.min_utts_per_speaker},
               {"speakers_used", log.speakers_used},
               {"vectors_used", log.vectors_used},
               {"log_likelihood", log.log_likelihood}},
              cfg);
}

// ---------------------------------------------------------- estimate-suv

struct EstimateSuvFlags {
  CommonFlags common;
  std::string full, short_, lda, out;
};

void RunEstimateSuv(const EstimateSuvFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  const std::string full_path = PathOr(flags.full, cfg, "full", true);
  const std::string short_path = PathOr(flags.short_, cfg, "short", true);
  const std::string lda_path = PathOr(flags.lda, cfg, "lda", true);
  const std::string out = PathOr(flags.out, cfg, "suv", true);
  const IVectorSet full = ReadIvectors(fs::path(full_path));
  const IVectorSet short_set = ReadIvectors(fs::path(short_path));
  if (full.size() != short_set.size())
    throw InvalidArgument(Concat("full set has ", full.size(),
                                 " vectors, short set has ", short_set.size()));
  std::vector<UtterancePair> pairs;
  for (size_t i = 0; i < full.size(); ++i)
    pairs.push_back({full[i], short_set[i]});
  const auto lda = LdaTransform::FromArchive(MatrixArchive::ReadFile(lda_path));
  const SuvModel suv = EstimateSuv(pairs, lda);
  suv.ToArchive().WriteFile(out);
  WriteRunLog(flags.common, out, "estimate-suv",
              {{"full", full_path},
               {"short", short_path},
               {"lda", lda_path},
               {"out", out},
               {"pairs", pairs.size()},
               {"ridge_used", suv.ridge_used}},
              cfg);
}

// --------------------------------------------------------------- augment

struct AugmentFlags {
  CommonFlags common;
  std::string ivectors, lda, suv, out;
  std::optional<int> copies;
};

void RunAugment(const AugmentFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.copies) cfg.suv.copies = *flags.copies;
  const std::string in = PathOr(flags.ivectors, cfg, "ivectors", true);
  const std::string lda_path = PathOr(flags.lda, cfg, "lda", false);
  const std::string suv_path = PathOr(flags.suv, cfg, "suv", true);
  const std::string out = PathOr(flags.out, cfg, "augmented", true);
  const IVectorSet set = ReadIvectors(fs::path(in));
  const auto lda = MaybeLda(lda_path);
  const SuvModel suv = SuvModel::FromArchive(MatrixArchive::ReadFile(suv_path));
  Matrix data = set.AsMatrix();
  if (lda) data = Project(data, *lda);
  const Matrix augmented = AugmentColumns(data, suv, cfg.seed, cfg.suv.copies);
  IVectorSet result(static_cast<int>(augmented.rows()));
  for (size_t i = 0; i < set.size(); ++i)
    for (int c = 0; c < cfg.suv.copies; ++c) {
      const auto &e = set[i];
      result.Add(augmented.col(static_cast<Eigen::Index>(i) * cfg.suv.copies + c),
                 Concat(e.utterance_id, "-suv", c), e.speaker_id,
                 e.duration_sec, e.channel_tag);
    }
  WriteIvectors(result, fs::path(out));
  WriteRunLog(flags.common, out, "augment",
              {{"ivectors", in}, {"lda", lda_path}, {"suv", suv_path},
               {"out", out}},
              cfg);
}

// ---------------------------------------------------------------- enroll

struct EnrollFlags {
  CommonFlags common;
  std::string ivectors, map, frames, tv, out;
  std::optional<int> partitions;
};

void RunEnroll(const EnrollFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.partitions) cfg.partitions = *flags.partitions;
  const std::string out = PathOr(flags.out, cfg, "enrolled", true);
  ordered_json inputs = {{"out", out}};
  std::optional<IVectorSet> result;

  if (!flags.frames.empty()) {
    const std::string tv_path = PathOr(flags.tv, cfg, "tv", true);
    const TvModel tv = TvModel::FromArchive(MatrixArchive::ReadFile(tv_path));
    const auto utterances =
        FrameStatsFromArchive(MatrixArchive::ReadFile(flags.frames));
    result.emplace(tv.ivector_dim());
    for (const auto &[utt, frames] : utterances)
      result->Add(PartitionedIvector(frames, cfg.partitions, tv), utt, utt, 0.0);
    inputs["frames"] = flags.frames;
    inputs["tv"] = tv_path;
  } else {
    const std::string in = PathOr(flags.ivectors, cfg, "ivectors", true);
    if (flags.map.empty())
      throw InvalidArgument("--map is required with --ivectors");
    const IVectorSet pieces = ReadIvectors(fs::path(in));
    result.emplace(pieces.dim());
    std::vector<std::string> lines;
    ReadFile(flags.map, [&](std::istream &is) {
      std::string line;
      while (std::getline(is, line)) lines.push_back(line);
    }, false);
    for (size_t n = 0; n < lines.size(); ++n) {
      std::istringstream ss(lines[n]);
      std::string enrol_id, piece_id;
      if (!(ss >> enrol_id)) continue;
      std::vector<Vector> vectors;
      std::string speaker;
      double duration = 0.0;
      while (ss >> piece_id) {
        const IVector &piece = pieces.Find(piece_id);
        if (!speaker.empty() && speaker != piece.speaker_id)
          throw InvalidArgument(Concat("map line ", n + 1,
                                       ": pieces of ", enrol_id,
                                       " mix speakers"));
        speaker = piece.speaker_id;
        duration += piece.duration_sec;
        vectors.push_back(ToDouble(piece));
      }
      if (vectors.empty())
        throw InvalidArgument(Concat("map line ", n + 1, ": no pieces for ",
                                     enrol_id));
      result->Add(AverageIvectors(vectors), enrol_id, speaker, duration);
    }
    inputs["ivectors"] = in;
    inputs["map"] = flags.map;
  }
  WriteIvectors(*result, fs::path(out));
  WriteRunLog(flags.common, out, "enroll", inputs, cfg);
}

// ----------------------------------------------------------------- score

struct ScoreFlags {
  CommonFlags common;
  std::string plda, lda, enroll, test, trials, cohort, out;
  bool snorm = false;
  std::optional<int> cohort_size;
};

void RunScore(const ScoreFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.snorm) cfg.snorm.enabled = true;
  if (!flags.cohort.empty()) cfg.snorm.cohort = flags.cohort;
  if (flags.cohort_size) cfg.snorm.cohort_size = *flags.cohort_size;
  const std::string plda_path = PathOr(flags.plda, cfg, "plda", true);
  const std::string lda_path = PathOr(flags.lda, cfg, "lda", false);
  const std::string enroll_path = PathOr(flags.enroll, cfg, "enroll", true);
  const std::string test_path = PathOr(flags.test, cfg, "test", true);
  const std::string trials_path = PathOr(flags.trials, cfg, "trials", true);
  const std::string out = PathOr(flags.out, cfg, "scores", true);

  const GpldaModel model =
      GpldaModel::FromArchive(MatrixArchive::ReadFile(plda_path));
  const auto lda = MaybeLda(lda_path);
  const LdaTransform *lda_ptr = lda ? &*lda : nullptr;
  const VectorMap enrolled =
      PreprocessSet(ReadIvectors(fs::path(enroll_path)), lda_ptr);
  const VectorMap tests = PreprocessSet(ReadIvectors(fs::path(test_path)), lda_ptr);
  const auto trials = ReadTrials(fs::path(trials_path));
  ScoreSet scores = ScoreTrials(trials, enrolled, tests, model, cfg.workers);
  if (cfg.snorm.enabled) {
    if (cfg.snorm.cohort.empty())
      throw InvalidArgument("S-norm needs --cohort (or snorm.cohort)");
    scores = ApplySnorm(scores, enrolled, tests,
                        CohortMatrix(cfg.snorm.cohort, cfg.snorm.cohort_size,
                                     lda_ptr),
                        model, cfg.workers);
  }
  WriteScores(scores, fs::path(out));
  WriteRunLog(flags.common, out, "score",
              {{"plda", plda_path},
               {"lda", lda_path},
               {"enroll", enroll_path},
               {"test", test_path},
               {"trials", trials_path},
               {"out", out},
               {"trials_scored", scores.size()}},
              cfg);
}

// ----------------------------------------------------------------- snorm

struct SnormFlags {
  CommonFlags common;
  std::string scores, plda, lda, enroll, test, cohort, out;
  std::optional<int> cohort_size;
};

void RunSnorm(const SnormFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  cfg.snorm.enabled = true;
  if (!flags.cohort.empty()) cfg.snorm.cohort = flags.cohort;
  if (flags.cohort_size) cfg.snorm.cohort_size = *flags.cohort_size;
  const std::string scores_path = PathOr(flags.scores, cfg, "scores", true);
  const std::string plda_path = PathOr(flags.plda, cfg, "plda", true);
  const std::string lda_path = PathOr(flags.lda, cfg, "lda", false);
  const std::string enroll_path = PathOr(flags.enroll, cfg, "enroll", true);
  const std::string test_path = PathOr(flags.test, cfg, "test", true);
  const std::string out = PathOr(flags.out, cfg, "normalized", true);
  if (cfg.snorm.cohort.empty())
    throw InvalidArgument("missing --cohort (or snorm.cohort)");

  const GpldaModel model =
      GpldaModel::FromArchive(MatrixArchive::ReadFile(plda_path));
  const auto lda = MaybeLda(lda_path);
  const LdaTransform *lda_ptr = lda ? &*lda : nullptr;
  const ScoreSet raw = ReadScores(fs::path(scores_path));
  const ScoreSet normalized = ApplySnorm(
      raw, PreprocessSet(ReadIvectors(fs::path(enroll_path)), lda_ptr),
      PreprocessSet(ReadIvectors(fs::path(test_path)), lda_ptr),
      CohortMatrix(cfg.snorm.cohort, cfg.snorm.cohort_size, lda_ptr), model,
      cfg.workers);
  WriteScores(normalized, fs::path(out));
  WriteRunLog(flags.common, out, "snorm",
              {{"scores", scores_path},
               {"plda", plda_path},
               {"lda", lda_path},
               {"enroll", enroll_path},
               {"test", test_path},
               {"out", out}},
              cfg);
}

// -------------------------------------------------------------- evaluate

struct EvaluateFlags {
  CommonFlags common;
  std::string scores, trials, out, det;
  std::optional<double> c_miss, c_fa, p_target;
};

void RunEvaluate(const EvaluateFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.c_miss) cfg.eval.c_miss = *flags.c_miss;
  if (flags.c_fa) cfg.eval.c_fa = *flags.c_fa;
  if (flags.p_target) cfg.eval.p_target = *flags.p_target;
  const std::string scores_path = PathOr(flags.scores, cfg, "scores", true);
  const std::string trials_path = PathOr(flags.trials, cfg, "trials", true);
  const std::string out = PathOr(flags.out, cfg, "report", true);

  const ScoreSet scores = ReadScores(fs::path(scores_path));
  const auto trials = ReadTrials(fs::path(trials_path));
  const auto split = SplitByLabel(scores, trials);
  const EvalReport report = Evaluate(split.target, split.nontarget, cfg.eval);

  ordered_json j = {{"eer", report.eer},
                    {"min_dcf", report.min_dcf},
                    {"thresholds", {{"eer", report.eer_threshold},
                                    {"min_dcf", report.min_dcf_threshold}}},
                    {"counts", {{"target", report.n_target},
                                {"nontarget", report.n_nontarget}}}};
  const std::string text = j.dump(2) + "\n";
  WriteFileAtomically(out, [&](std::ostream &os) { os << text; }, false);
  if (!flags.det.empty()) {
    const auto points = DetPoints(split.target, split.nontarget);
    WriteFileAtomically(flags.det, [&](std::ostream &os) {
      os << "p_fa,p_miss\n";
      os.precision(17);
      for (const auto &[p_fa, p_miss] : points) os << p_fa << ',' << p_miss << '\n';
    }, false);
  }
  WriteRunLog(flags.common, out, "evaluate",
              {{"scores", scores_path}, {"trials", trials_path}, {"out", out},
               {"det", flags.det}},
              cfg);
}

// -------------------------------------------------------- run-experiment

struct ExperimentFlags {
  CommonFlags common;
  std::string out, table;
  std::optional<int> seeds, partitions, suv_copies;
  std::optional<bool> snorm;
};

void RunExperimentCommand(const ExperimentFlags &flags) {
  RunConfig cfg = ResolveConfig(flags.common);
  if (flags.seeds) cfg.experiment.num_seeds = *flags.seeds;
  if (flags.partitions) cfg.experiment.partitions = *flags.partitions;
  if (flags.suv_copies) cfg.experiment.suv_copies = *flags.suv_copies;
  if (flags.snorm) cfg.experiment.snorm = *flags.snorm;
  const std::string out = PathOr(flags.out, cfg, "report", true);

  const ExperimentReport report = RunExperiment(cfg.experiment, cfg.workers);
  const std::string json_text = ReportToJson(report);
  const std::string table = ReportToText(report);
  WriteFileAtomically(out, [&](std::ostream &os) { os << json_text; }, false);
  if (!flags.table.empty())
    WriteFileAtomically(flags.table, [&](std::ostream &os) { os << table; },
                        false);
  std::cout << table;
  WriteRunLog(flags.common, out, "run-experiment",
              {{"out", out}, {"table", flags.table}}, cfg);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"ivplda: i-vector PLDA back-end with short-utterance "
               "compensation"};
  app.require_subcommand(1);

  SynthFlags synth;
  auto *synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  AddCommonFlags(synth_cmd, &synth.common);
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--partitions", synth.partitions,
                        "Enrollment pieces per session");

  TrainLdaFlags lda;
  auto *lda_cmd = app.add_subcommand("train-lda", "Train an LDA projection");
  AddCommonFlags(lda_cmd, &lda.common);
  lda_cmd->add_option("--ivectors", lda.ivectors, "Training IVEC file");
  lda_cmd->add_option("--dim", lda.dim, "Output dimension (default 150)");
  lda_cmd->add_option("--out", lda.out, "Output LDA archive");

  TrainPldaFlags plda;
  auto *plda_cmd = app.add_subcommand("train-plda", "Train a GPLDA model");
  AddCommonFlags(plda_cmd, &plda.common);
  plda_cmd->add_option("--ivectors", plda.ivectors, "Training IVEC file");
  plda_cmd->add_option("--lda", plda.lda, "LDA archive applied first");
  plda_cmd->add_option("--suv", plda.suv, "SUV archive; augments the data");
  plda_cmd->add_option("--copies", plda.copies, "SUV copies per vector");
  plda_cmd->add_option("--n1", plda.n1, "Eigenvoices (default 120)");
  plda_cmd->add_option("--iters", plda.iters, "EM iterations (default 20)");
  plda_cmd->add_option("--min-utts", plda.min_utts,
                       "Skip speakers with fewer vectors (default 2)");
  plda_cmd->add_option("--out", plda.out, "Output PLDA archive");

  EstimateSuvFlags suv;
  auto *suv_cmd =
      app.add_subcommand("estimate-suv", "Estimate the short-utterance variance");
  AddCommonFlags(suv_cmd, &suv.common);
  suv_cmd->add_option("--full", suv.full, "Full-length IVEC file");
  suv_cmd->add_option("--short", suv.short_, "Short IVEC file, rows paired");
  suv_cmd->add_option("--lda", suv.lda, "LDA archive");
  suv_cmd->add_option("--out", suv.out, "Output SUV archive");

  AugmentFlags augment;
  auto *augment_cmd =
      app.add_subcommand("augment", "Add SUV noise to (projected) vectors");
  AddCommonFlags(augment_cmd, &augment.common);
  augment_cmd->add_option("--ivectors", augment.ivectors, "Input IVEC file");
  augment_cmd->add_option("--lda", augment.lda, "LDA archive applied first");
  augment_cmd->add_option("--suv", augment.suv, "SUV archive");
  augment_cmd->add_option("--copies", augment.copies, "Copies per vector");
  augment_cmd->add_option("--out", augment.out, "Output IVEC file");

  EnrollFlags enroll;
  auto *enroll_cmd = app.add_subcommand(
      "enroll", "Average partitioned i-vectors into enrollment vectors");
  AddCommonFlags(enroll_cmd, &enroll.common);
  enroll_cmd->add_option("--ivectors", enroll.ivectors, "Piece IVEC file");
  enroll_cmd->add_option("--map", enroll.map,
                         "Lines of \"enrol_id piece_id...\"");
  enroll_cmd->add_option("--frames", enroll.frames,
                         "Frame-statistics archive (with --tv)");
  enroll_cmd->add_option("--tv", enroll.tv, "TV model archive");
  enroll_cmd->add_option("--partitions", enroll.partitions,
                         "Pieces per utterance in --frames mode (default 1)");
  enroll_cmd->add_option("--out", enroll.out, "Output IVEC file");

  ScoreFlags score;
  auto *score_cmd = app.add_subcommand("score", "Score trials with GPLDA");
  AddCommonFlags(score_cmd, &score.common);
  score_cmd->add_option("--plda", score.plda, "PLDA archive");
  score_cmd->add_option("--lda", score.lda, "LDA archive");
  score_cmd->add_option("--enroll", score.enroll, "Enrollment IVEC file");
  score_cmd->add_option("--test", score.test, "Test IVEC file");
  score_cmd->add_option("--trials", score.trials, "Trial list");
  score_cmd->add_flag("--snorm", score.snorm, "Apply S-norm");
  score_cmd->add_option("--cohort", score.cohort, "S-norm cohort IVEC file");
  score_cmd->add_option("--cohort-size", score.cohort_size,
                        "Cohort vectors used (default 200)");
  score_cmd->add_option("--out", score.out, "Output score file");

  SnormFlags snorm;
  auto *snorm_cmd = app.add_subcommand("snorm", "S-normalize a score file");
  AddCommonFlags(snorm_cmd, &snorm.common);
  snorm_cmd->add_option("--scores", snorm.scores, "Raw score file");
  snorm_cmd->add_option("--plda", snorm.plda, "PLDA archive");
  snorm_cmd->add_option("--lda", snorm.lda, "LDA archive");
  snorm_cmd->add_option("--enroll", snorm.enroll, "Enrollment IVEC file");
  snorm_cmd->add_option("--test", snorm.test, "Test IVEC file");
  snorm_cmd->add_option("--cohort", snorm.cohort, "Cohort IVEC file");
  snorm_cmd->add_option("--cohort-size", snorm.cohort_size,
                        "Cohort vectors used (default 200)");
  snorm_cmd->add_option("--out", snorm.out, "Output score file");

  EvaluateFlags evaluate;
  auto *evaluate_cmd = app.add_subcommand("evaluate", "EER and minDCF report");
  AddCommonFlags(evaluate_cmd, &evaluate.common);
  evaluate_cmd->add_option("--scores", evaluate.scores, "Score file");
  evaluate_cmd->add_option("--trials", evaluate.trials, "Labelled trial list");
  evaluate_cmd->add_option("--out", evaluate.out, "Output JSON report");
  evaluate_cmd->add_option("--det", evaluate.det, "Optional DET points CSV");
  evaluate_cmd->add_option("--c-miss", evaluate.c_miss, "Miss cost (default 10)");
  evaluate_cmd->add_option("--c-fa", evaluate.c_fa,
                           "False-alarm cost (default 1)");
  evaluate_cmd->add_option("--p-target", evaluate.p_target,
                           "Target prior (default 0.01)");

  ExperimentFlags experiment;
  auto *experiment_cmd = app.add_subcommand(
      "run-experiment", "Compare GPLDA/SUV-GPLDA with and without partitioning");
  AddCommonFlags(experiment_cmd, &experiment.common);
  experiment_cmd->add_option("--out", experiment.out, "Output JSON report");
  experiment_cmd->add_option("--table", experiment.table, "Output text table");
  experiment_cmd->add_option("--seeds", experiment.seeds,
                             "Number of consecutive seeds (default 5)");
  experiment_cmd->add_option("--partitions", experiment.partitions,
                             "Enrollment pieces (default 2)");
  experiment_cmd->add_option("--suv-copies", experiment.suv_copies,
                             "SUV copies per development vector (default 1)");
  experiment_cmd->add_flag("--snorm,!--no-snorm", experiment.snorm,
                           "Toggle S-norm (default on)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "ivplda: error: " << e.what() << '\n';
    return 2;
  }

  CLI::App *cmd = app.get_subcommands().front();
  try {
    if (cmd == synth_cmd) RunSynth(synth);
    else if (cmd == lda_cmd) RunTrainLda(lda);
    else if (cmd == plda_cmd) RunTrainPlda(plda);
    else if (cmd == suv_cmd) RunEstimateSuv(suv);
    else if (cmd == augment_cmd) RunAugment(augment);
    else if (cmd == enroll_cmd) RunEnroll(enroll);
    else if (cmd == score_cmd) RunScore(score);
    else if (cmd == snorm_cmd) RunSnorm(snorm);
    else if (cmd == evaluate_cmd) RunEvaluate(evaluate);
    else if (cmd == experiment_cmd) RunExperimentCommand(experiment);
  } catch (const std::exception &e) {
    std::string message = e.what();
    for (char &c : message)
      if (c == '\n') c = ' ';
    std::cerr << "ivplda " << cmd->get_name() << ": error: " << message << '\n';
    return 1;
  }
  return 0;
}
