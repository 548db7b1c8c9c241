// include/ivplda/random.h

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

#ifndef IVPLDA_RANDOM_H_
#define IVPLDA_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "ivplda/common.h"

namespace ivplda {

using Engine = std::mt19937_64;

/// Engine keyed by a tuple of integers, e.g. {seed, stream, index}.  The
/// same key always yields the same sequence; distinct keys give
/// independent-looking streams, which lets parallel producers stay
/// deterministic.
Engine MakeEngine(std::initializer_list<uint64_t> key);

/// Vector of i.i.d. standard normal draws.
Vector StandardNormal(Engine &engine, Eigen::Index n);

}  // namespace ivplda

#endif  // IVPLDA_RANDOM_H_
