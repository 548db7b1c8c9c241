// src/synth.cc

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

#include "ivplda/synth.h"

#include <cmath>
#include <cstdio>

namespace ivplda {

namespace {

Vector ScaleVector(const std::vector<double> &scales, int dim) {
  if (scales.empty()) return Vector::Ones(dim);
  return Eigen::Map<const Vector>(scales.data(),
                                  static_cast<Eigen::Index>(scales.size()));
}

}  // namespace

void SynthConfig::Validate() const {
  if (dim <= 0 || n_speakers <= 0 || sessions_per_speaker <= 0)
    throw InvalidArgument("synth: dim, n_speakers and sessions must be positive");
  if (!(speaker_var > 0.0) || !(session_var > 0.0) ||
      !(utterance_var_per_sec > 0.0))
    throw InvalidArgument("synth: all variances must be positive");
  if (durations_sec.empty()) throw InvalidArgument("synth: no durations");
  for (double d : durations_sec)
    if (!(d > 0.0) || !std::isfinite(d))
      throw InvalidArgument(Concat("synth: invalid duration ", d));
  for (const auto *scales : {&speaker_scales, &utterance_scales}) {
    if (scales->empty()) continue;
    if (static_cast<int>(scales->size()) != dim)
      throw InvalidArgument("synth: scale vector length must equal dim");
    for (double s : *scales)
      if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidArgument("synth: scales must be positive");
  }
}

SpeakerSampler::SpeakerSampler(const SynthConfig &cfg, SynthStream stream,
                               int speaker_index)
    : cfg_(cfg),
      engine_(MakeEngine({cfg.seed, static_cast<uint64_t>(stream),
                          static_cast<uint64_t>(speaker_index)})) {
  speaker_sd_ =
      (cfg.speaker_var * ScaleVector(cfg.speaker_scales, cfg.dim)).cwiseSqrt();
  utterance_sd_ = ScaleVector(cfg.utterance_scales, cfg.dim).cwiseSqrt();
  mean_ = speaker_sd_.cwiseProduct(StandardNormal(engine_, cfg.dim));
}

Vector SpeakerSampler::NewSession() {
  return mean_ + std::sqrt(cfg_.session_var) * StandardNormal(engine_, cfg_.dim);
}

Vector SpeakerSampler::Utterance(const Vector &session, double duration_sec) {
  if (!(duration_sec > 0.0))
    throw InvalidArgument(Concat("invalid utterance duration ", duration_sec));
  const double sd = std::sqrt(cfg_.utterance_var_per_sec / duration_sec);
  return session +
         sd * utterance_sd_.cwiseProduct(StandardNormal(engine_, cfg_.dim));
}

std::string SpeakerName(int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "spk%05d", index);
  return buffer;
}

IVectorSet GenerateCorpus(const SynthConfig &cfg) {
  cfg.Validate();
  IVectorSet set(cfg.dim);
  for (int s = 0; s < cfg.n_speakers; ++s) {
    SpeakerSampler sampler(cfg, SynthStream::kCorpus, s);
    const std::string speaker = SpeakerName(s);
    for (int j = 0; j < cfg.sessions_per_speaker; ++j) {
      const Vector session = sampler.NewSession();
      for (size_t u = 0; u < cfg.durations_sec.size(); ++u) {
        const double tau = cfg.durations_sec[u];
        set.Add(sampler.Utterance(session, tau),
                Concat(speaker, "-s", j, "-u", u), speaker, tau);
      }
    }
  }
  return set;
}

std::vector<UtterancePair> MakeFullShortPairs(const SynthConfig &cfg,
                                              double full_sec,
                                              double short_sec) {
  cfg.Validate();
  if (!(short_sec > 0.0) || !(short_sec < full_sec) || !std::isfinite(full_sec))
    throw InvalidArgument(Concat("need 0 < short_sec < full_sec, got ",
                                 short_sec, " and ", full_sec));
  std::vector<UtterancePair> pairs;
  pairs.reserve(static_cast<size_t>(cfg.n_speakers) * cfg.sessions_per_speaker);
  for (int s = 0; s < cfg.n_speakers; ++s) {
    SpeakerSampler sampler(cfg, SynthStream::kPairs, s);
    const std::string speaker = SpeakerName(s);
    for (int j = 0; j < cfg.sessions_per_speaker; ++j) {
      const Vector session = sampler.NewSession();
      const std::string utt = Concat(speaker, "-s", j);
      UtterancePair pair;
      pair.w_full = IVector{sampler.Utterance(session, full_sec).cast<float>(),
                            utt + "-full", speaker, full_sec, std::nullopt};
      pair.w_short = IVector{sampler.Utterance(session, short_sec).cast<float>(),
                             utt + "-short", speaker, short_sec, std::nullopt};
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

}  // namespace ivplda
