// src/json-convert.h

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

// JSON conversions shared by the config loader and the report writer.

#ifndef IVPLDA_SRC_JSON_CONVERT_H_
#define IVPLDA_SRC_JSON_CONVERT_H_

#include "ivplda/eval.h"
#include "ivplda/experiment.h"
#include "json.hpp"

namespace ivplda {

nlohmann::ordered_json CostToJson(const CostParams &cost);
// Fields absent from `j` keep their current values; unknown keys throw
// InvalidArgument naming `where`.
void CostFromJson(const nlohmann::ordered_json &j, CostParams *cost,
                  const std::string &where);

nlohmann::ordered_json ExperimentToJson(const ExperimentConfig &cfg);
void ExperimentFromJson(const nlohmann::ordered_json &j, ExperimentConfig *cfg,
                        const std::string &where);

nlohmann::ordered_json EvalReportToJson(const EvalReport &report);

// Throws InvalidArgument if `j` has a key outside `allowed`.
void CheckKeys(const nlohmann::ordered_json &j,
               std::initializer_list<const char *> allowed,
               const std::string &where);

// Reads j[key] into *out when present, converting type errors into
// InvalidArgument.
template <typename T>
void ReadIfPresent(const nlohmann::ordered_json &j, const char *key, T *out,
                   const std::string &where) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw InvalidArgument(Concat("config ", where, ".", key,
                                 ": wrong value type"));
  }
}

}  // namespace ivplda

#endif  // IVPLDA_SRC_JSON_CONVERT_H_
