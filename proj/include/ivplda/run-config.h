// include/ivplda/run-config.h

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

#ifndef IVPLDA_RUN_CONFIG_H_
#define IVPLDA_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "ivplda/eval.h"
#include "ivplda/experiment.h"

namespace ivplda {

/// Resolved configuration of a command.  Loaded from a JSON file whose
/// keys mirror the fields below (all optional, unknown keys rejected);
/// command-line flags are applied on top by the caller.
///
///   {
///     "paths": {"lda": "lda.nmat", ...},
///     "lda_dim": 150, "n1": 120, "em_iterations": 20, "partitions": 1,
///     "suv": {"short_sec": 20, "copies": 1},
///     "snorm": {"enabled": false, "cohort": "", "cohort_size": 200},
///     "eval": {"c_miss": 10, "c_fa": 1, "p_target": 0.01},
///     "seed": 0, "workers": 1,
///     "experiment": { ...ExperimentConfig fields... }
///   }
struct RunConfig {
  struct Suv {
    double short_sec = 20.0;
    int copies = 1;
  };
  struct Snorm {
    bool enabled = false;
    std::string cohort;
    int cohort_size = 200;
  };

  std::map<std::string, std::string> paths;
  int lda_dim = 150;
  int n1 = 120;
  int em_iterations = 20;
  int partitions = 1;
  Suv suv;
  Snorm snorm;
  CostParams eval;
  uint64_t seed = 0;
  int workers = 1;
  ExperimentConfig experiment;

  static RunConfig FromJson(const std::string &text);
  static RunConfig FromFile(const std::filesystem::path &path);
  /// Pretty-printed, key order fixed.
  std::string ToJson() const;

  /// paths[key] or "" when unset.
  std::string Path(const std::string &key) const;
};

}  // namespace ivplda

#endif  // IVPLDA_RUN_CONFIG_H_
