// include/ivplda/parallel.h

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

#ifndef IVPLDA_PARALLEL_H_
#define IVPLDA_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ivplda {

/// Splits [0, n) into `workers` contiguous ranges and runs `body(begin, end)`
/// on each, one thread per range.  Results must be written to
/// index-addressed slots so the outcome does not depend on `workers`.
/// The first exception thrown by any range is rethrown after all join.
void ParallelFor(size_t n, int workers,
                 const std::function<void(size_t, size_t)> &body);

}  // namespace ivplda

#endif  // IVPLDA_PARALLEL_H_
