// tests/acceptance-test.cc

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

// Acceptance suite.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <cstring>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ivplda/eval.h"
#include "ivplda/experiment.h"
#include "ivplda/gplda.h"
#include "ivplda/random.h"
#include "ivplda/suv.h"
#include "ivplda/vectorstore.h"
#include "json.hpp"
#include "test-util.h"

using namespace ivplda;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Format(const char *fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ----------------------------------------------------------- experiment

struct ExperimentRuns {
  bool ok = false;
  double seconds = 0.0;
  std::string first, second, four_workers;
};

ExperimentRuns RunExperiments(const testing::TempDir &dir) {
  ExperimentRuns runs;
  auto run = [&](const std::string &out, int workers) {
    const std::string cmd = std::string("'") + IVPLDA_CLI_PATH +
                            "' run-experiment --seed 7 --workers " +
                            std::to_string(workers) + " --out '" +
                            (dir / out).string() + "' > /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const auto start = std::chrono::steady_clock::now();
  runs.ok = run("a.json", 1);
  runs.seconds = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  runs.ok = run("b.json", 1) && runs.ok;
  runs.ok = run("c.json", 4) && runs.ok;
  runs.first = Slurp(dir / "a.json");
  runs.second = Slurp(dir / "b.json");
  runs.four_workers = Slurp(dir / "c.json");
  return runs;
}

double RowEer(const json &rows, const std::string &system,
              const std::string &condition) {
  for (const auto &r : rows)
    if (r["system"] == system && r["condition"] == condition)
      return r["eer"].get<double>();
  throw InvalidArgument("missing row " + system + " " + condition);
}

Outcome PartitioningGain(const json &report, double seconds) {
  const double single = RowEer(report["mean"], "GPLDA", "10sec-10sec");
  const double part = RowEer(report["mean"], "GPLDA", "10sec(2)-10sec");
  const double rel = (single - part) / single;
  return {part < single && rel >= 0.05 && seconds < 120.0,
          Format("GPLDA EER 10sec-10sec %.2f%% -> 10sec(2)-10sec %.2f%%, "
                 "relative gain %.1f%% (need >= 5%%), runtime %.1fs (need < 120s)",
                 100 * single, 100 * part, 100 * rel, seconds)};
}

Outcome SuvGain(const json &report) {
  const double base = RowEer(report["mean"], "GPLDA", "10sec-10sec");
  const double suv = RowEer(report["mean"], "SUV-GPLDA", "10sec-10sec");
  const double rel = (base - suv) / base;
  return {suv < base && rel >= 0.03,
          Format("10sec-10sec EER GPLDA %.2f%% -> SUV-GPLDA %.2f%%, relative "
                 "gain %.1f%% (need >= 3%%)",
                 100 * base, 100 * suv, 100 * rel)};
}

Outcome CombinedBest(const json &report) {
  int wins = 0;
  for (const auto &seed : report["seeds"]) {
    const auto &rows = seed["rows"];
    const double combined = RowEer(rows, "SUV-GPLDA", "10sec(2)-10sec");
    const double others[] = {RowEer(rows, "GPLDA", "10sec-10sec"),
                             RowEer(rows, "GPLDA", "10sec(2)-10sec"),
                             RowEer(rows, "SUV-GPLDA", "10sec-10sec")};
    if (std::all_of(std::begin(others), std::end(others),
                    [&](double e) { return combined < e; }))
      ++wins;
  }
  return {wins >= 4,
          Format("partitioned SUV-GPLDA lowest of the four in %d of %zu seeds "
                 "(need >= 4)",
                 wins, report["seeds"].size())};
}

Outcome Determinism(const ExperimentRuns &runs) {
  const bool same_runs = !runs.first.empty() && runs.first == runs.second;
  const bool same_workers = runs.first == runs.four_workers;
  return {runs.ok && same_runs && same_workers,
          Format("repeat run %s, workers 1 vs 4 %s",
                 same_runs ? "byte-identical" : "DIFFERS",
                 same_workers ? "byte-identical" : "DIFFERS")};
}

// --------------------------------------------------------------- scoring

double NormalPdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) /
         std::sqrt(2.0 * std::numbers::pi * var);
}

Outcome ScoringOracle() {
  double worst_quad = 0.0, worst_z = 0.0;
  for (uint64_t m = 0; m < 20; ++m) {
    Engine engine = MakeEngine({4, m});
    std::uniform_real_distribution<double> unif(0.3, 2.0);

    // k = 1: Simpson quadrature over the latent variable.
    GpldaModel one{Vector::Constant(1, unif(engine) - 1.0),
                   Matrix::Constant(1, 1, unif(engine)),
                   Matrix::Constant(1, 1, unif(engine))};
    const double a = one.mean(0) + StandardNormal(engine, 1)(0);
    const double b = one.mean(0) + StandardNormal(engine, 1)(0);
    const double u = one.u1(0, 0), noise = 1.0 / one.lambda(0, 0);
    const double lo = -20.0, hi = 20.0;
    const int n = 40000;
    const double h = (hi - lo) / n;
    auto f = [&](double x) {
      const double c = one.mean(0) + u * x;
      return NormalPdf(a, c, noise) * NormalPdf(b, c, noise) * NormalPdf(x, 0, 1);
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    const double total = u * u + noise;
    const double oracle = std::log(sum * h / 3.0) -
                          std::log(NormalPdf(a, one.mean(0), total) *
                                   NormalPdf(b, one.mean(0), total));
    worst_quad = std::max(
        worst_quad,
        std::abs(Score(Vector::Constant(1, a), Vector::Constant(1, b), one) - oracle));

    // k = 2: Monte-Carlo over the latent variable, 10^6 samples.
    GpldaModel two;
    two.mean = 0.5 * StandardNormal(engine, 2);
    two.u1 = testing::RandomMatrix(engine, 2, 2);
    two.lambda = testing::RandomSpd(engine, 2, 0.5).inverse();
    two.lambda = 0.5 * (two.lambda + two.lambda.transpose()).eval();
    const Vector va = two.mean + 0.7 * StandardNormal(engine, 2);
    const Vector vb = two.mean + 0.7 * StandardNormal(engine, 2);
    const Matrix &prec = two.lambda;
    const double norm_const =
        std::sqrt(prec.determinant()) / (2.0 * std::numbers::pi);
    auto pdf = [&](const Vector &x, const Vector &c) {
      const Vector d = x - c;
      return norm_const * std::exp(-0.5 * d.dot(prec * d));
    };
    const int samples = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Vector c = two.mean + two.u1 * StandardNormal(engine, 2);
      const double v = pdf(va, c) * pdf(vb, c);
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / samples;
    const double se = std::sqrt(std::max(s2 / samples - mean * mean, 0.0) / samples);
    const Matrix tot = two.u1 * two.u1.transpose() + two.lambda.inverse();
    const double marg = std::exp(testing::GaussianLogPdf(va, two.mean, tot) +
                                 testing::GaussianLogPdf(vb, two.mean, tot));
    const double predicted = std::exp(Score(va, vb, two)) * marg;
    worst_z = std::max(worst_z, std::abs(mean - predicted) / se);
  }
  return {worst_quad <= 1e-6 && worst_z <= 3.0,
          Format("20 models: max |score - quadrature| %.2e (need <= 1e-6), "
                 "max Monte-Carlo deviation %.2f sigma (need <= 3)",
                 worst_quad, worst_z)};
}

// -------------------------------------------------------------------- EM

Outcome EmCorrectness() {
  double worst_step = std::numeric_limits<double>::infinity();
  for (uint64_t t = 0; t < 50; ++t) {
    Engine engine = MakeEngine({5, t});
    std::uniform_int_distribution<int> kd(3, 10), spk(30, 120), ses(2, 6);
    const int k = kd(engine);
    const int n1_true = std::uniform_int_distribution<int>(1, k - 1)(engine);
    const int n1 = std::uniform_int_distribution<int>(1, k)(engine);
    GpldaModel truth;
    truth.mean = StandardNormal(engine, k);
    truth.u1 = testing::RandomMatrix(engine, k, n1_true);
    truth.lambda = testing::RandomSpd(engine, k, 0.3).inverse();
    truth.lambda = 0.5 * (truth.lambda + truth.lambda.transpose()).eval();
    // Unequal session counts per speaker.
    testing::LabeledData data;
    const int speakers = spk(engine);
    std::vector<Vector> cols;
    for (int s = 0; s < speakers; ++s) {
      auto one = testing::SampleFromModel(truth, 1, ses(engine), engine);
      for (Eigen::Index c = 0; c < one.data.cols(); ++c) {
        cols.push_back(one.data.col(c));
        data.speakers.push_back("s" + std::to_string(s));
      }
    }
    data.data.resize(k, static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) data.data.col(c) = cols[c];
    TrainLog log;
    TrainGplda(data.data, data.speakers, {n1, 20, t, 2}, &log);
    for (size_t i = 1; i < log.log_likelihood.size(); ++i)
      worst_step = std::min(worst_step,
                            log.log_likelihood[i] - log.log_likelihood[i - 1]);
  }

  Engine engine = MakeEngine({5, 1000});
  GpldaModel truth;
  truth.mean = StandardNormal(engine, 8);
  truth.u1 = 1.5 * testing::RandomMatrix(engine, 8, 2);
  truth.lambda = testing::RandomSpd(engine, 8, 0.3).inverse();
  truth.lambda = 0.5 * (truth.lambda + truth.lambda.transpose()).eval();
  const auto x = testing::SampleFromModel(truth, 500, 8, engine);
  const GpldaModel est = TrainGplda(x.data, x.speakers, {2, 20, 0, 2});
  const double angle = testing::SubspaceAngleDegrees(est.u1, truth.u1);
  const Matrix true_cov = truth.u1 * truth.u1.transpose() + truth.lambda.inverse();
  const Matrix est_cov = est.u1 * est.u1.transpose() + est.lambda.inverse();
  const double cov_err = (est_cov - true_cov).norm() / true_cov.norm();
  // Sampling floor: the error of the plain sample covariance of the same data.
  const Matrix centred = x.data.colwise() - x.data.rowwise().mean();
  const Matrix sample_cov = centred * centred.transpose() / x.data.cols();
  const double floor_err = (sample_cov - true_cov).norm() / true_cov.norm();
  return {worst_step >= -1e-8 && angle < 10.0 && cov_err < 0.10,
          Format("50 sets x 20 iterations: smallest log-likelihood step %.3e "
                 "(need >= -1e-8); recovery angle %.2f deg (need < 10), "
                 "covariance error %.2f%% (need < 10%%, sample covariance "
                 "%.2f%%)",
                 worst_step, angle, 100 * cov_err, 100 * floor_err)};
}

// ------------------------------------------------------------------- SUV

Outcome SuvAlgebra() {
  double worst_est = 0.0, worst_chol = 0.0, worst_cov = 0.0;
  for (uint64_t t = 0; t < 20; ++t) {
    Engine engine = MakeEngine({6, t});
    const int d_in = 8, k = 5, n = 40;
    const Matrix full = testing::RandomMatrix(engine, d_in, n);
    const Matrix short_ = testing::RandomMatrix(engine, d_in, n);
    const LdaTransform lda{testing::RandomMatrix(engine, d_in, k)};
    Matrix oracle = Matrix::Zero(k, k);
    for (int c = 0; c < n; ++c) {
      Vector diff = Vector::Zero(k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < d_in; ++i)
          diff(j) += lda.a(i, j) * (full(i, c) - short_(i, c));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) oracle(i, j) += diff(i) * diff(j) / n;
    }
    const SuvModel model = EstimateSuv(full, short_, lda);
    worst_est = std::max(worst_est, (model.s_suv - oracle).cwiseAbs().maxCoeff());

    const int rank = 1 + static_cast<int>(t % k);
    const Matrix g = testing::RandomMatrix(engine, k, rank);
    const Matrix s = g * g.transpose();
    const Decorrelation dec = Decorrelate(s);
    worst_chol = std::max(
        worst_chol, (dec.d_factor * dec.d_factor.transpose() - s -
                     dec.ridge * Matrix::Identity(k, k))
                        .cwiseAbs()
                        .maxCoeff());
  }
  for (const Matrix &s : {Matrix{{1.0, 0.0}, {0.0, 4.0}},
                          Matrix{{2.0, 0.6, -0.3}, {0.6, 1.0, 0.2}, {-0.3, 0.2, 0.5}}}) {
    SuvModel model;
    model.s_suv = s;
    const Decorrelation dec = Decorrelate(s);
    model.d_factor = dec.d_factor;
    model.ridge_used = dec.ridge;
    const Vector w = Vector::Ones(s.rows());
    const auto out = Augment(w, model, 606, 100000);
    Matrix cov = Matrix::Zero(s.rows(), s.cols());
    for (const Vector &o : out) cov += (o - w) * (o - w).transpose();
    cov /= static_cast<double>(out.size());
    for (Eigen::Index i = 0; i < s.rows(); ++i)
      for (Eigen::Index j = 0; j < s.cols(); ++j)
        worst_cov = std::max(worst_cov, std::abs(cov(i, j) - s(i, j)) /
                                            std::sqrt(s(i, i) * s(j, j)));
  }
  return {worst_est <= 1e-12 && worst_chol <= 1e-8 && worst_cov <= 0.05,
          Format("estimate vs oracle %.2e (need <= 1e-12), |DD' - S - rI| "
                 "%.2e (need <= 1e-8), augmentation covariance error %.2f%% "
                 "(need <= 5%%)",
                 worst_est, worst_chol, 100 * worst_cov)};
}

// --------------------------------------------------------------- metrics

Outcome MetricOracle() {
  double worst_eer = 0.0, worst_dcf = 0.0, max_dcf = 0.0;
  const CostParams cost;
  for (uint64_t t = 0; t < 100; ++t) {
    Engine engine = MakeEngine({7, t});
    std::uniform_int_distribution<int> total(2, 1000);
    const int n = total(engine);
    const int n_tar = std::uniform_int_distribution<int>(1, n - 1)(engine);
    std::uniform_int_distribution<int> grid(-10, 10);
    const bool ties = t % 3 == 0;
    std::vector<double> tar, non;
    for (int i = 0; i < n; ++i) {
      const double s = ties ? grid(engine) / 2.0 : StandardNormal(engine, 1)(0);
      if (i < n_tar) tar.push_back(s + 1.0); else non.push_back(s);
    }
    std::vector<double> thresholds = tar;
    thresholds.insert(thresholds.end(), non.begin(), non.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    thresholds.push_back(thresholds.back() + 1.0);
    std::vector<double> miss, fa;
    for (double th : thresholds) {
      double m = 0, f = 0;
      for (double s : tar) m += s < th;
      for (double s : non) f += s >= th;
      miss.push_back(m / tar.size());
      fa.push_back(f / non.size());
    }
    double eer = 1.0;
    for (size_t i = 0; i < thresholds.size(); ++i) {
      const double d = miss[i] - fa[i];
      if (d == 0.0) { eer = miss[i]; break; }
      if (d > 0.0) {
        const double dp = miss[i - 1] - fa[i - 1];
        eer = fa[i - 1] + dp / (dp - d) * (fa[i] - fa[i - 1]);
        break;
      }
    }
    double dcf = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < thresholds.size(); ++i)
      dcf = std::min(dcf, (cost.c_miss * cost.p_target * miss[i] +
                           cost.c_fa * (1 - cost.p_target) * fa[i]) /
                              std::min(cost.c_miss * cost.p_target,
                                       cost.c_fa * (1 - cost.p_target)));
    const double got_dcf = ComputeMinDcf(tar, non, cost).value;
    worst_eer = std::max(worst_eer, std::abs(ComputeEer(tar, non).value - eer));
    worst_dcf = std::max(worst_dcf, std::abs(got_dcf - dcf));
    max_dcf = std::max(max_dcf, got_dcf);
  }
  return {worst_eer <= 1e-12 && worst_dcf <= 1e-12 && max_dcf <= 1.0 + 1e-12,
          Format("100 sets: max EER error %.2e, max minDCF error %.2e (need "
                 "<= 1e-12), largest minDCF %.4f (need <= 1)",
                 worst_eer, worst_dcf, max_dcf)};
}

// ------------------------------------------------------------ round-trip

Outcome FormatRoundTrip() {
  int failures = 0;
  for (uint64_t t = 0; t < 1000; ++t) {
    Engine engine = MakeEngine({9, t});
    const int dim = std::uniform_int_distribution<int>(1, 64)(engine);
    const int count = t == 0 ? 0 : t == 1 ? 1
                     : std::uniform_int_distribution<int>(0, 40)(engine);
    IVectorSet set(dim);
    std::uniform_int_distribution<uint32_t> bits;
    for (int i = 0; i < count; ++i) {
      IVector v;
      v.values.resize(dim);
      for (auto &x : v.values) {
        // Random finite bit patterns, including subnormals and signed zeros.
        do {
          const uint32_t b = bits(engine);
          std::memcpy(&x, &b, 4);
        } while (!std::isfinite(x));
      }
      v.utterance_id = "u\xc3\xa9-" + std::to_string(i);
      v.speaker_id = "s\"" + std::to_string(i % 5);
      v.duration_sec = std::uniform_real_distribution<double>(0, 1e4)(engine);
      if (bits(engine) % 2) v.channel_tag = "ch" + std::to_string(i);
      set.Add(std::move(v));
    }
    std::stringstream ss;
    WriteIvectors(set, ss);
    const IVectorSet back = ReadIvectors(ss);
    bool same = back.dim() == set.dim() && back.size() == set.size();
    for (size_t i = 0; same && i < set.size(); ++i)
      same = std::memcmp(back[i].values.data(), set[i].values.data(),
                         sizeof(float) * dim) == 0 &&
             back[i].utterance_id == set[i].utterance_id &&
             back[i].speaker_id == set[i].speaker_id &&
             back[i].duration_sec == set[i].duration_sec &&
             back[i].channel_tag == set[i].channel_tag;
    failures += !same;
  }
  return {failures == 0,
          Format("1000 sets (first empty, second single-vector): %d mismatches",
                 failures)};
}

}  // namespace

int main() {
  testing::TempDir dir;
  const ExperimentRuns runs = RunExperiments(dir);
  json report;
  bool report_ok = runs.ok;
  try {
    report = json::parse(runs.first);
  } catch (const std::exception &) {
    report_ok = false;
  }

  auto guarded = [&](const std::function<Outcome()> &f) -> Outcome {
    try {
      return f();
    } catch (const std::exception &e) {
      return {false, std::string("error: ") + e.what()};
    }
  };
  auto needs_report = [&](const std::function<Outcome()> &f) -> Outcome {
    if (!report_ok) return {false, "run-experiment did not produce a report"};
    return guarded(f);
  };

  const std::vector<std::pair<std::string, Outcome>> results = {
      {"partitioning gain",
       needs_report([&] { return PartitioningGain(report, runs.seconds); })},
      {"SUV gain", needs_report([&] { return SuvGain(report); })},
      {"combined system best", needs_report([&] { return CombinedBest(report); })},
      {"scoring oracle", guarded(ScoringOracle)},
      {"EM correctness", guarded(EmCorrectness)},
      {"SUV algebra", guarded(SuvAlgebra)},
      {"metric oracle", guarded(MetricOracle)},
      {"determinism", guarded([&] { return Determinism(runs); })},
      {"format round-trip", guarded(FormatRoundTrip)},
  };
  int failed = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto &[name, outcome] = results[i];
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". "
              << name << ": " << outcome.detail << '\n';
    failed += !outcome.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
