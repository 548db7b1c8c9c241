// include/ivplda/eval.h

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

#ifndef IVPLDA_EVAL_H_
#define IVPLDA_EVAL_H_

#include <span>
#include <vector>

#include "ivplda/vectorstore.h"

namespace ivplda {

/// Detection cost parameters; defaults are the old NIST SRE costs.
struct CostParams {
  double c_miss = 10.0;
  double c_fa = 1.0;
  double p_target = 0.01;

  void Validate() const;
};

struct EvalReport {
  double eer = 0.0;
  double eer_threshold = 0.0;
  double min_dcf = 0.0;  // normalized
  double min_dcf_threshold = 0.0;
  size_t n_target = 0;
  size_t n_nontarget = 0;
};

/// Miss and false-alarm rates for the rule "accept iff score >= threshold".
struct OperatingPoint {
  double threshold;
  double p_miss;
  double p_fa;
};

/// One operating point per distinct score value, ascending, followed by
/// the reject-all point at the next representable value above the
/// largest score.  Needs >= 1 target and >= 1 nontarget score.
std::vector<OperatingPoint> SweepOperatingPoints(
    std::span<const double> target_scores,
    std::span<const double> nontarget_scores);

struct ThresholdedValue {
  double value;
  double threshold;
};

/// Equal error rate.  The crossing of P_miss and P_fa is located between
/// adjacent operating points and linearly interpolated; the reported
/// threshold is that of the lower bracketing point (or of the exact
/// crossing point when the rates coincide).
ThresholdedValue ComputeEer(std::span<const double> target_scores,
                            std::span<const double> nontarget_scores);

/// Minimum of C_miss P_tar P_miss + C_fa (1 - P_tar) P_fa over thresholds,
/// normalized by min(C_miss P_tar, C_fa (1 - P_tar)).  Ties go to the
/// lower threshold.
ThresholdedValue ComputeMinDcf(std::span<const double> target_scores,
                               std::span<const double> nontarget_scores,
                               const CostParams &params = {});

/// (P_fa, P_miss) staircase in rising-threshold order with consecutive
/// duplicates collapsed.
std::vector<std::pair<double, double>> DetPoints(
    std::span<const double> target_scores,
    std::span<const double> nontarget_scores);

/// Target and nontarget scores of `scores` looked up in `trials`.  Every
/// score needs a target/nontarget label.
struct LabeledScores {
  std::vector<double> target;
  std::vector<double> nontarget;
};
LabeledScores SplitByLabel(const ScoreSet &scores,
                           const std::vector<Trial> &trials);

EvalReport Evaluate(const ScoreSet &scores, const std::vector<Trial> &trials,
                    const CostParams &params = {});
EvalReport Evaluate(std::span<const double> target_scores,
                    std::span<const double> nontarget_scores,
                    const CostParams &params = {});

}  // namespace ivplda

#endif  // IVPLDA_EVAL_H_
