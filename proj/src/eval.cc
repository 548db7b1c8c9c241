// src/eval.cc

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

#include "ivplda/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace ivplda {

void CostParams::Validate() const {
  if (!(c_miss > 0.0) || !(c_fa > 0.0))
    throw InvalidArgument("detection costs must be positive");
  if (!(p_target > 0.0 && p_target < 1.0))
    throw InvalidArgument("P_target must lie in (0, 1)");
}

std::vector<OperatingPoint> SweepOperatingPoints(
    std::span<const double> target_scores,
    std::span<const double> nontarget_scores) {
  if (target_scores.empty() || nontarget_scores.empty())
    throw InvalidArgument(Concat("evaluation needs target and nontarget trials (",
                                 target_scores.size(), " targets, ",
                                 nontarget_scores.size(), " nontargets)"));
  std::vector<double> targets(target_scores.begin(), target_scores.end());
  std::vector<double> nontargets(nontarget_scores.begin(),
                                 nontarget_scores.end());
  for (double s : targets)
    if (!std::isfinite(s)) throw InvalidArgument("non-finite target score");
  for (double s : nontargets)
    if (!std::isfinite(s)) throw InvalidArgument("non-finite nontarget score");
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  const double n_tar = static_cast<double>(targets.size());
  const double n_non = static_cast<double>(nontargets.size());
  std::vector<OperatingPoint> points;
  size_t ti = 0, ni = 0;  // scores strictly below the current threshold
  while (ti < targets.size() || ni < nontargets.size()) {
    double t;
    if (ti == targets.size())
      t = nontargets[ni];
    else if (ni == nontargets.size())
      t = targets[ti];
    else
      t = std::min(targets[ti], nontargets[ni]);
    points.push_back({t, static_cast<double>(ti) / n_tar,
                      static_cast<double>(nontargets.size() - ni) / n_non});
    while (ti < targets.size() && targets[ti] == t) ++ti;
    while (ni < nontargets.size() && nontargets[ni] == t) ++ni;
  }
  const double top = std::max(targets.back(), nontargets.back());
  points.push_back({std::nextafter(top, std::numeric_limits<double>::infinity()),
                    1.0, 0.0});
  return points;
}

ThresholdedValue ComputeEer(std::span<const double> target_scores,
                            std::span<const double> nontarget_scores) {
  const auto points = SweepOperatingPoints(target_scores, nontarget_scores);
  // P_miss - P_fa is nondecreasing along the sweep and ends at +1.
  size_t i = 0;
  while (points[i].p_miss < points[i].p_fa) ++i;
  if (points[i].p_miss == points[i].p_fa || i == 0)
    return {points[i].p_miss, points[i].threshold};
  const auto &lo = points[i - 1], &hi = points[i];
  const double gap_lo = lo.p_fa - lo.p_miss;  // > 0
  const double gap_hi = hi.p_fa - hi.p_miss;  // < 0
  const double alpha = gap_lo / (gap_lo - gap_hi);
  const double eer = lo.p_miss + alpha * (hi.p_miss - lo.p_miss);
  return {std::clamp(eer, 0.0, 1.0), lo.threshold};
}

ThresholdedValue ComputeMinDcf(std::span<const double> target_scores,
                               std::span<const double> nontarget_scores,
                               const CostParams &params) {
  params.Validate();
  const auto points = SweepOperatingPoints(target_scores, nontarget_scores);
  const double w_miss = params.c_miss * params.p_target;
  const double w_fa = params.c_fa * (1.0 - params.p_target);
  const double norm = std::min(w_miss, w_fa);
  ThresholdedValue best{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto &p : points) {
    const double cost = (w_miss * p.p_miss + w_fa * p.p_fa) / norm;
    if (cost < best.value) best = {cost, p.threshold};
  }
  return best;
}

std::vector<std::pair<double, double>> DetPoints(
    std::span<const double> target_scores,
    std::span<const double> nontarget_scores) {
  std::vector<std::pair<double, double>> out;
  for (const auto &p : SweepOperatingPoints(target_scores, nontarget_scores)) {
    std::pair<double, double> point{p.p_fa, p.p_miss};
    if (out.empty() || out.back() != point) out.push_back(point);
  }
  return out;
}

LabeledScores SplitByLabel(const ScoreSet &scores,
                           const std::vector<Trial> &trials) {
  std::unordered_map<std::string, TrialLabel> labels;
  labels.reserve(trials.size());
  for (const auto &t : trials) {
    std::string key = t.enrol_id;
    key.push_back('\0');
    key += t.test_id;
    labels[key] = t.label;
  }
  LabeledScores out;
  for (const auto &e : scores.entries()) {
    std::string key = e.enrol_id;
    key.push_back('\0');
    key += e.test_id;
    auto it = labels.find(key);
    if (it == labels.end() || it->second == TrialLabel::kUnknown)
      throw InvalidArgument(Concat("no target/nontarget label for trial ",
                                   e.enrol_id, " ", e.test_id));
    (it->second == TrialLabel::kTarget ? out.target : out.nontarget)
        .push_back(e.score);
  }
  return out;
}

EvalReport Evaluate(std::span<const double> target_scores,
                    std::span<const double> nontarget_scores,
                    const CostParams &params) {
  EvalReport report;
  const auto eer = ComputeEer(target_scores, nontarget_scores);
  const auto dcf = ComputeMinDcf(target_scores, nontarget_scores, params);
  report.eer = eer.value;
  report.eer_threshold = eer.threshold;
  report.min_dcf = dcf.value;
  report.min_dcf_threshold = dcf.threshold;
  report.n_target = target_scores.size();
  report.n_nontarget = nontarget_scores.size();
  return report;
}

EvalReport Evaluate(const ScoreSet &scores, const std::vector<Trial> &trials,
                    const CostParams &params) {
  const auto split = SplitByLabel(scores, trials);
  return Evaluate(split.target, split.nontarget, params);
}

}  // namespace ivplda
