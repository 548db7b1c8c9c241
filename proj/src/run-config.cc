// src/run-config.cc

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

#include "ivplda/run-config.h"

#include <fstream>
#include <sstream>

#include "ivplda/file-util.h"
#include "json-convert.h"

namespace ivplda {

using nlohmann::ordered_json;

RunConfig RunConfig::FromJson(const std::string &text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(Concat("config is not valid JSON: ", e.what()));
  }
  RunConfig cfg;
  CheckKeys(j,
            {"paths", "lda_dim", "n1", "em_iterations", "partitions", "suv",
             "snorm", "eval", "seed", "workers", "experiment"},
            "root");
  ReadIfPresent(j, "paths", &cfg.paths, "root");
  ReadIfPresent(j, "lda_dim", &cfg.lda_dim, "root");
  ReadIfPresent(j, "n1", &cfg.n1, "root");
  ReadIfPresent(j, "em_iterations", &cfg.em_iterations, "root");
  ReadIfPresent(j, "partitions", &cfg.partitions, "root");
  ReadIfPresent(j, "seed", &cfg.seed, "root");
  ReadIfPresent(j, "workers", &cfg.workers, "root");
  if (j.contains("suv")) {
    CheckKeys(j["suv"], {"short_sec", "copies"}, "suv");
    ReadIfPresent(j["suv"], "short_sec", &cfg.suv.short_sec, "suv");
    ReadIfPresent(j["suv"], "copies", &cfg.suv.copies, "suv");
  }
  if (j.contains("snorm")) {
    CheckKeys(j["snorm"], {"enabled", "cohort", "cohort_size"}, "snorm");
    ReadIfPresent(j["snorm"], "enabled", &cfg.snorm.enabled, "snorm");
    ReadIfPresent(j["snorm"], "cohort", &cfg.snorm.cohort, "snorm");
    ReadIfPresent(j["snorm"], "cohort_size", &cfg.snorm.cohort_size, "snorm");
  }
  if (j.contains("eval")) CostFromJson(j["eval"], &cfg.eval, "eval");
  if (j.contains("experiment"))
    ExperimentFromJson(j["experiment"], &cfg.experiment, "experiment");
  return cfg;
}

RunConfig RunConfig::FromFile(const std::filesystem::path &path) {
  std::string text;
  ReadFile(path, [&](std::istream &is) {
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }, false);
  return FromJson(text);
}

std::string RunConfig::ToJson() const {
  ordered_json j;
  j["paths"] = paths;
  j["lda_dim"] = lda_dim;
  j["n1"] = n1;
  j["em_iterations"] = em_iterations;
  j["partitions"] = partitions;
  j["suv"] = {{"short_sec", suv.short_sec}, {"copies", suv.copies}};
  j["snorm"] = {{"enabled", snorm.enabled},
                {"cohort", snorm.cohort},
                {"cohort_size", snorm.cohort_size}};
  j["eval"] = CostToJson(eval);
  j["seed"] = seed;
  j["workers"] = workers;
  j["experiment"] = ExperimentToJson(experiment);
  return j.dump(2) + "\n";
}

std::string RunConfig::Path(const std::string &key) const {
  auto it = paths.find(key);
  return it == paths.end() ? std::string() : it->second;
}

}  // namespace ivplda
