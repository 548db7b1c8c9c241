// src/vectorstore.cc

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

#include "ivplda/vectorstore.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iterator>

#include "binary-io.h"
#include "ivplda/file-util.h"
#include "json.hpp"

namespace ivplda {

using internal::ReadPod;
using internal::WritePod;
using nlohmann::json;

namespace {

constexpr uint32_t kIvecVersion = 1;

std::string PairKey(const std::string &enrol, const std::string &test) {
  std::string key = enrol;
  key.push_back('\0');
  key += test;
  return key;
}

std::vector<std::string> Tokenize(const std::string &line) {
  std::istringstream ss(line);
  return {std::istream_iterator<std::string>(ss),
          std::istream_iterator<std::string>()};
}

}  // namespace

bool IVector::operator==(const IVector &other) const {
  if (values.size() != other.values.size()) return false;
  // Bitwise comparison of the payload, so -0.0 and NaN patterns count.
  if (values.size() > 0 &&
      std::memcmp(values.data(), other.values.data(),
                  sizeof(float) * values.size()) != 0)
    return false;
  return utterance_id == other.utterance_id &&
         speaker_id == other.speaker_id &&
         duration_sec == other.duration_sec &&
         channel_tag == other.channel_tag;
}

IVectorSet::IVectorSet(int dim) : dim_(dim) {
  if (dim <= 0) throw InvalidArgument(Concat("dimension must be positive, got ", dim));
}

void IVectorSet::Add(IVector v) {
  if (v.values.size() != dim_)
    throw InvalidArgument(Concat("utterance ", v.utterance_id, " has dimension ",
                                 v.values.size(), ", set dimension is ", dim_));
  if (!v.values.allFinite())
    throw InvalidArgument(Concat("utterance ", v.utterance_id,
                                 " has non-finite values"));
  if (!(v.duration_sec >= 0.0) || !std::isfinite(v.duration_sec))
    throw InvalidArgument(Concat("utterance ", v.utterance_id,
                                 " has invalid duration ", v.duration_sec));
  if (index_.count(v.utterance_id))
    throw InvalidArgument(Concat("duplicate utterance id ", v.utterance_id));
  index_.emplace(v.utterance_id, entries_.size());
  entries_.push_back(std::move(v));
}

void IVectorSet::Add(const Vector &values, std::string utterance_id,
                     std::string speaker_id, double duration_sec,
                     std::optional<std::string> channel_tag) {
  Add(IVector{values.cast<float>(), std::move(utterance_id),
              std::move(speaker_id), duration_sec, std::move(channel_tag)});
}

const IVector &IVectorSet::Find(const std::string &utterance_id) const {
  auto it = index_.find(utterance_id);
  if (it == index_.end())
    throw InvalidArgument(Concat("unknown utterance id ", utterance_id));
  return entries_[it->second];
}

Matrix IVectorSet::AsMatrix() const {
  Matrix m(dim_, static_cast<Eigen::Index>(entries_.size()));
  for (size_t i = 0; i < entries_.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = entries_[i].values.cast<double>();
  return m;
}

std::vector<std::string> IVectorSet::SpeakerIds() const {
  std::vector<std::string> ids;
  ids.reserve(entries_.size());
  for (const auto &e : entries_) ids.push_back(e.speaker_id);
  return ids;
}

bool IVectorSet::operator==(const IVectorSet &other) const {
  return dim_ == other.dim_ && entries_ == other.entries_;
}

std::vector<std::vector<int>> GroupBySpeaker(
    const std::vector<std::string> &speaker_ids) {
  std::vector<std::vector<int>> groups;
  std::unordered_map<std::string, size_t> slot;
  for (size_t i = 0; i < speaker_ids.size(); ++i) {
    auto [it, inserted] = slot.emplace(speaker_ids[i], groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(static_cast<int>(i));
  }
  return groups;
}

void WriteIvectors(const IVectorSet &set, std::ostream &os) {
  json manifest = json::array();
  for (const auto &e : set.entries()) {
    json item = {{"utterance_id", e.utterance_id},
                 {"speaker_id", e.speaker_id},
                 {"duration_sec", e.duration_sec}};
    if (e.channel_tag) item["channel_tag"] = *e.channel_tag;
    manifest.push_back(std::move(item));
  }
  const std::string manifest_text = manifest.dump();

  internal::WriteMagic(os, "IVEC");
  WritePod<uint32_t>(os, kIvecVersion);
  WritePod<uint32_t>(os, static_cast<uint32_t>(set.dim()));
  WritePod<uint32_t>(os, static_cast<uint32_t>(set.size()));
  for (const auto &e : set.entries())
    for (Eigen::Index i = 0; i < e.values.size(); ++i)
      WritePod<float>(os, e.values[i]);
  WritePod<uint32_t>(os, static_cast<uint32_t>(manifest_text.size()));
  os.write(manifest_text.data(),
           static_cast<std::streamsize>(manifest_text.size()));
  if (!os) throw IoError("write failed for IVEC stream");
}

void WriteIvectors(const IVectorSet &set, const std::filesystem::path &path) {
  WriteFileAtomically(path, [&](std::ostream &os) { WriteIvectors(set, os); });
}

IVectorSet ReadIvectors(std::istream &is) {
  internal::ExpectMagic(is, "IVEC");
  const auto version = ReadPod<uint32_t>(is, "version");
  if (version != kIvecVersion)
    throw FormatError(Concat("unsupported IVEC version ", version));
  const auto dim = ReadPod<uint32_t>(is, "dim");
  const auto count = ReadPod<uint32_t>(is, "count");
  if (dim == 0) throw FormatError("IVEC dim must be positive");

  const uint64_t payload_bytes = uint64_t{count} * dim * sizeof(float);
  std::string payload(payload_bytes, '\0');
  is.read(payload.data(), static_cast<std::streamsize>(payload_bytes));
  if (static_cast<uint64_t>(is.gcount()) != payload_bytes)
    throw FormatError(Concat("truncated IVEC payload: header declares ", count,
                             " x ", dim, " floats (", payload_bytes,
                             " bytes), found ", is.gcount()));

  const auto manifest_length = ReadPod<uint32_t>(is, "manifest length");
  const std::string manifest_text =
      internal::ReadBytes(is, manifest_length, "manifest");
  if (is.peek() != std::char_traits<char>::eof())
    throw FormatError("trailing bytes after IVEC manifest");

  json manifest;
  try {
    manifest = json::parse(manifest_text);
  } catch (const json::exception &e) {
    throw FormatError(Concat("invalid IVEC manifest: ", e.what()));
  }
  if (!manifest.is_array() || manifest.size() != count)
    throw FormatError(Concat("IVEC manifest has ",
                             manifest.is_array() ? manifest.size() : 0,
                             " entries, header declares ", count));

  IVectorSet set(static_cast<int>(dim));
  for (uint32_t row = 0; row < count; ++row) {
    IVector v;
    v.values.resize(dim);
    for (uint32_t i = 0; i < dim; ++i) {
      float value;
      std::memcpy(&value, payload.data() + (uint64_t{row} * dim + i) * 4, 4);
      value = internal::ToLittleEndian(value);
      if (!std::isfinite(value))
        throw FormatError(Concat("non-finite value at row ", row, ", column ", i));
      v.values[i] = value;
    }
    const json &item = manifest[row];
    try {
      v.utterance_id = item.at("utterance_id").get<std::string>();
      v.speaker_id = item.at("speaker_id").get<std::string>();
      v.duration_sec = item.at("duration_sec").get<double>();
      if (item.contains("channel_tag") && !item["channel_tag"].is_null())
        v.channel_tag = item["channel_tag"].get<std::string>();
    } catch (const json::exception &e) {
      throw FormatError(Concat("bad manifest entry ", row, ": ", e.what()));
    }
    try {
      set.Add(std::move(v));
    } catch (const InvalidArgument &e) {
      throw FormatError(e.what());
    }
  }
  return set;
}

IVectorSet ReadIvectors(const std::filesystem::path &path) {
  std::optional<IVectorSet> set;
  ReadFile(path, [&](std::istream &is) { set.emplace(ReadIvectors(is)); });
  return std::move(*set);
}

std::vector<Trial> ReadTrials(std::istream &is) {
  std::vector<Trial> trials;
  std::string line;
  size_t line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3)
      throw FormatError(Concat("trial list line ", line_number,
                               ": expected \"enrol_id test_id [label]\""));
    Trial t{tokens[0], tokens[1], TrialLabel::kUnknown};
    if (tokens.size() == 3) {
      if (tokens[2] == "target")
        t.label = TrialLabel::kTarget;
      else if (tokens[2] == "nontarget")
        t.label = TrialLabel::kNontarget;
      else
        throw FormatError(Concat("trial list line ", line_number,
                                 ": unknown label \"", tokens[2], "\""));
    }
    trials.push_back(std::move(t));
  }
  return trials;
}

std::vector<Trial> ReadTrials(const std::filesystem::path &path) {
  std::vector<Trial> trials;
  ReadFile(path, [&](std::istream &is) { trials = ReadTrials(is); }, false);
  return trials;
}

void WriteTrials(const std::vector<Trial> &trials, std::ostream &os) {
  for (const auto &t : trials) {
    os << t.enrol_id << ' ' << t.test_id;
    if (t.label == TrialLabel::kTarget) os << " target";
    if (t.label == TrialLabel::kNontarget) os << " nontarget";
    os << '\n';
  }
}

void WriteTrials(const std::vector<Trial> &trials,
                 const std::filesystem::path &path) {
  WriteFileAtomically(path, [&](std::ostream &os) { WriteTrials(trials, os); },
                      false);
}

void ScoreSet::Add(std::string enrol_id, std::string test_id, double score) {
  if (!std::isfinite(score))
    throw InvalidArgument(Concat("non-finite score for trial ", enrol_id, " ",
                                 test_id));
  if (!keys_.insert(PairKey(enrol_id, test_id)).second)
    throw InvalidArgument(Concat("duplicate trial ", enrol_id, " ", test_id));
  entries_.push_back({std::move(enrol_id), std::move(test_id), score});
}

void WriteScores(const ScoreSet &scores, std::ostream &os) {
  char buffer[64];
  for (const auto &e : scores.entries()) {
    std::snprintf(buffer, sizeof(buffer), "%.6f", e.score);
    os << e.enrol_id << ' ' << e.test_id << ' ' << buffer << '\n';
  }
}

void WriteScores(const ScoreSet &scores, const std::filesystem::path &path) {
  WriteFileAtomically(path, [&](std::ostream &os) { WriteScores(scores, os); },
                      false);
}

ScoreSet ReadScores(std::istream &is) {
  ScoreSet scores;
  std::string line;
  size_t line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3)
      throw FormatError(Concat("score file line ", line_number,
                               ": expected \"enrol_id test_id score\""));
    double value;
    try {
      size_t consumed = 0;
      value = std::stod(tokens[2], &consumed);
      if (consumed != tokens[2].size()) throw std::invalid_argument("junk");
    } catch (const std::exception &) {
      throw FormatError(Concat("score file line ", line_number,
                               ": bad score \"", tokens[2], "\""));
    }
    try {
      scores.Add(tokens[0], tokens[1], value);
    } catch (const InvalidArgument &e) {
      throw FormatError(Concat("score file line ", line_number, ": ", e.what()));
    }
  }
  return scores;
}

ScoreSet ReadScores(const std::filesystem::path &path) {
  ScoreSet scores;
  ReadFile(path, [&](std::istream &is) { scores = ReadScores(is); }, false);
  return scores;
}

}  // namespace ivplda
