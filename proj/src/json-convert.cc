// src/json-convert.cc

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

#include "json-convert.h"

#include <algorithm>
#include <cstring>

namespace ivplda {

using nlohmann::ordered_json;

void CheckKeys(const ordered_json &j, std::initializer_list<const char *> allowed,
               const std::string &where) {
  if (!j.is_object())
    throw InvalidArgument(Concat("config ", where, " must be a JSON object"));
  for (const auto &item : j.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(), [&](const char *k) {
          return item.key() == k;
        });
    if (!known)
      throw InvalidArgument(Concat("config ", where, ": unknown key \"",
                                   item.key(), "\""));
  }
}

ordered_json CostToJson(const CostParams &cost) {
  return {{"c_miss", cost.c_miss}, {"c_fa", cost.c_fa},
          {"p_target", cost.p_target}};
}

void CostFromJson(const ordered_json &j, CostParams *cost,
                  const std::string &where) {
  CheckKeys(j, {"c_miss", "c_fa", "p_target"}, where);
  ReadIfPresent(j, "c_miss", &cost->c_miss, where);
  ReadIfPresent(j, "c_fa", &cost->c_fa, where);
  ReadIfPresent(j, "p_target", &cost->p_target, where);
}

ordered_json ExperimentToJson(const ExperimentConfig &c) {
  return {{"seed", c.seed},
          {"num_seeds", c.num_seeds},
          {"dim", c.dim},
          {"dev_speakers", c.dev_speakers},
          {"dev_sessions", c.dev_sessions},
          {"eval_speakers", c.eval_speakers},
          {"enroll_sessions", c.enroll_sessions},
          {"test_sessions", c.test_sessions},
          {"cohort_speakers", c.cohort_speakers},
          {"speaker_var", c.speaker_var},
          {"session_var", c.session_var},
          {"utterance_var_per_sec", c.utterance_var_per_sec},
          {"speaker_decay", c.speaker_decay},
          {"utterance_focus_dims", c.utterance_focus_dims},
          {"utterance_focus_scale", c.utterance_focus_scale},
          {"utterance_background_scale", c.utterance_background_scale},
          {"full_sec", c.full_sec},
          {"suv_short_sec", c.suv_short_sec},
          {"enroll_long_sec", c.enroll_long_sec},
          {"test_sec", c.test_sec},
          {"partitions", c.partitions},
          {"lda_dim", c.lda_dim},
          {"n1", c.n1},
          {"em_iterations", c.em_iterations},
          {"suv_copies", c.suv_copies},
          {"snorm", c.snorm},
          {"cohort_size", c.cohort_size},
          {"cost", CostToJson(c.cost)}};
}

void ExperimentFromJson(const ordered_json &j, ExperimentConfig *c,
                        const std::string &where) {
  CheckKeys(j,
            {"seed", "num_seeds", "dim", "dev_speakers", "dev_sessions",
             "eval_speakers", "enroll_sessions", "test_sessions",
             "cohort_speakers", "speaker_var", "session_var",
             "utterance_var_per_sec", "speaker_decay", "utterance_focus_dims",
             "utterance_focus_scale", "utterance_background_scale", "full_sec",
             "suv_short_sec", "enroll_long_sec", "test_sec", "partitions",
             "lda_dim", "n1", "em_iterations", "suv_copies", "snorm",
             "cohort_size", "cost"},
            where);
  ReadIfPresent(j, "seed", &c->seed, where);
  ReadIfPresent(j, "num_seeds", &c->num_seeds, where);
  ReadIfPresent(j, "dim", &c->dim, where);
  ReadIfPresent(j, "dev_speakers", &c->dev_speakers, where);
  ReadIfPresent(j, "dev_sessions", &c->dev_sessions, where);
  ReadIfPresent(j, "eval_speakers", &c->eval_speakers, where);
  ReadIfPresent(j, "enroll_sessions", &c->enroll_sessions, where);
  ReadIfPresent(j, "test_sessions", &c->test_sessions, where);
  ReadIfPresent(j, "cohort_speakers", &c->cohort_speakers, where);
  ReadIfPresent(j, "speaker_var", &c->speaker_var, where);
  ReadIfPresent(j, "session_var", &c->session_var, where);
  ReadIfPresent(j, "utterance_var_per_sec", &c->utterance_var_per_sec, where);
  ReadIfPresent(j, "speaker_decay", &c->speaker_decay, where);
  ReadIfPresent(j, "utterance_focus_dims", &c->utterance_focus_dims, where);
  ReadIfPresent(j, "utterance_focus_scale", &c->utterance_focus_scale, where);
  ReadIfPresent(j, "utterance_background_scale",
                &c->utterance_background_scale, where);
  ReadIfPresent(j, "full_sec", &c->full_sec, where);
  ReadIfPresent(j, "suv_short_sec", &c->suv_short_sec, where);
  ReadIfPresent(j, "enroll_long_sec", &c->enroll_long_sec, where);
  ReadIfPresent(j, "test_sec", &c->test_sec, where);
  ReadIfPresent(j, "partitions", &c->partitions, where);
  ReadIfPresent(j, "lda_dim", &c->lda_dim, where);
  ReadIfPresent(j, "n1", &c->n1, where);
  ReadIfPresent(j, "em_iterations", &c->em_iterations, where);
  ReadIfPresent(j, "suv_copies", &c->suv_copies, where);
  ReadIfPresent(j, "snorm", &c->snorm, where);
  ReadIfPresent(j, "cohort_size", &c->cohort_size, where);
  if (j.contains("cost")) CostFromJson(j["cost"], &c->cost, where + ".cost");
}

ordered_json EvalReportToJson(const EvalReport &r) {
  return {{"eer", r.eer},
          {"min_dcf", r.min_dcf},
          {"thresholds", {{"eer", r.eer_threshold},
                          {"min_dcf", r.min_dcf_threshold}}},
          {"counts", {{"target", r.n_target}, {"nontarget", r.n_nontarget}}}};
}

}  // namespace ivplda
