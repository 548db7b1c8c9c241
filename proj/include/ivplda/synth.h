// include/ivplda/synth.h

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

#ifndef IVPLDA_SYNTH_H_
#define IVPLDA_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ivplda/common.h"
#include "ivplda/random.h"
#include "ivplda/suv.h"
#include "ivplda/vectorstore.h"

namespace ivplda {

/// Generative model of an i-vector of duration tau for speaker s, session j:
///   w = mu_s + e_j + d,  mu_s ~ N(0, speaker_var * diag(speaker_scales)),
///   e_j ~ N(0, session_var I),
///   d ~ N(0, utterance_var_per_sec / tau * diag(utterance_scales)).
/// Empty scale vectors mean all ones (isotropic).
struct SynthConfig {
  uint64_t seed = 0;
  int dim = 50;
  int n_speakers = 100;
  int sessions_per_speaker = 4;
  double speaker_var = 1.0;
  double session_var = 0.3;
  double utterance_var_per_sec = 4.0;
  std::vector<double> durations_sec = {10.0};
  std::vector<double> speaker_scales;
  std::vector<double> utterance_scales;

  void Validate() const;
};

/// Random streams are keyed by (seed, stream, speaker index) so speakers
/// can be generated independently and in any order.
enum class SynthStream : uint64_t {
  kCorpus = 1,
  kPairs = 2,
  kExperimentDev = 3,
  kExperimentEval = 4,
  kExperimentCohort = 5,
  kExperimentSuv = 6,
};

/// Draws the vectors of one speaker.
class SpeakerSampler {
 public:
  SpeakerSampler(const SynthConfig &cfg, SynthStream stream, int speaker_index);

  const Vector &speaker_mean() const { return mean_; }
  /// mu_s + a fresh session offset.
  Vector NewSession();
  /// `session` plus utterance noise for a `duration_sec` recording.
  Vector Utterance(const Vector &session, double duration_sec);

 private:
  const SynthConfig &cfg_;
  Engine engine_;
  Vector speaker_sd_, utterance_sd_;
  Vector mean_;
};

/// Speaker ids are "spk<index>" zero-padded to a fixed width; utterance ids
/// "<speaker>-s<session>-u<k>" where k indexes cfg.durations_sec.
std::string SpeakerName(int index);

/// Every speaker, session and listed duration once.
IVectorSet GenerateCorpus(const SynthConfig &cfg);

/// One full-length and one short draw per (speaker, session) sharing the
/// speaker and session terms.
std::vector<UtterancePair> MakeFullShortPairs(const SynthConfig &cfg,
                                              double full_sec, double short_sec);

}  // namespace ivplda

#endif  // IVPLDA_SYNTH_H_
