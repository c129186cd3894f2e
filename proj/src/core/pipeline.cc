// core/pipeline.cc

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/pipeline.h"

#include <algorithm>
#include <map>

#include "core/error.h"
#include "core/score_matrix.h"

namespace diarkit {

std::vector<Segment> SegmentRegions(const std::vector<Interval> &sad,
                                    const std::string &recording,
                                    double window, double hop) {
  if (!(hop <= window)) {
    throw Error(ErrorCode::kInvalidArgument, "hop must not exceed window");
  }
  std::vector<const Interval *> regions;
  for (const auto &r : sad) {
    if (r.recording == recording) regions.push_back(&r);
  }
  for (size_t i = 1; i < regions.size(); ++i) {
    if (regions[i]->onset < regions[i - 1]->offset) {
      throw Error(ErrorCode::kInvalidArgument,
                  "speech regions must be sorted and non-overlapping");
    }
  }
  std::vector<Segment> segments;
  for (const Interval *r : regions) {
    for (auto [onset, offset] : UniformSegment(r->onset, r->offset, window,
                                               hop)) {
      segments.push_back({recording, onset, offset,
                          static_cast<int>(segments.size())});
    }
  }
  return segments;
}

std::vector<SpeakerTypePrior> SegmentPriorsFromPosteriors(
    const FramePosteriorSequence &posteriors,
    const std::vector<Segment> &segments) {
  std::vector<SpeakerTypePrior> priors;
  priors.reserve(segments.size());
  for (const auto &s : segments) {
    priors.push_back(SegmentPrior(posteriors, s.onset, s.offset));
  }
  return priors;
}

std::string SpeakerName(int label) { return "spk" + std::to_string(label); }

std::vector<Turn> LabelsToTurns(
    const std::vector<Segment> &segments, const std::vector<int> &labels,
    const std::function<std::string(int)> &namer) {
  if (labels.size() != segments.size()) {
    throw Error(ErrorCode::kInvalidArgument, "labels must cover all segments");
  }
  std::map<int, std::vector<const Segment *>> by_label;
  for (size_t i = 0; i < segments.size(); ++i) {
    by_label[labels[i]].push_back(&segments[i]);
  }
  std::vector<Turn> turns;
  for (auto &[label, members] : by_label) {
    std::sort(members.begin(), members.end(),
              [](const Segment *a, const Segment *b) {
                return a->onset < b->onset ||
                       (a->onset == b->onset && a->offset < b->offset);
              });
    Turn current{members[0]->recording, members[0]->onset,
                 members[0]->offset, namer(label)};
    for (size_t i = 1; i < members.size(); ++i) {
      const Segment *s = members[i];
      if (s->onset <= current.offset) {
        current.offset = std::max(current.offset, s->offset);
      } else {
        turns.push_back(current);
        current.onset = s->onset;
        current.offset = s->offset;
      }
    }
    turns.push_back(current);
  }
  return turns;
}

namespace {

void CheckParallel(const std::vector<Segment> &segments,
                   const std::vector<Embedding> &embeddings) {
  if (segments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no segments to diarize");
  }
  if (segments.size() != embeddings.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one embedding per segment");
  }
}

DiarizationHypothesis Assemble(const std::vector<Segment> &segments,
                               std::vector<int> labels) {
  DiarizationHypothesis hyp;
  hyp.recording = segments[0].recording;
  hyp.turns = LabelsToTurns(segments, labels);
  hyp.labels = std::move(labels);
  return hyp;
}

}  // namespace

DiarizationHypothesis DiarizeSingle(const PldaModel &model,
                                    const std::vector<Segment> &segments,
                                    const std::vector<Embedding> &embeddings,
                                    const StopRule &stop,
                                    bool length_normalize) {
  CheckParallel(segments, embeddings);
  ScoreMatrix scores =
      ScoreAllPairsSingle(model, embeddings, length_normalize);
  return Assemble(segments, ClusterAhc(scores, stop));
}

DiarizationHypothesis DiarizeMixture(const MixturePlda &mix,
                                     const SpeakerTypePrior &prior,
                                     const std::vector<Segment> &segments,
                                     const std::vector<Embedding> &embeddings,
                                     const StopRule &stop,
                                     bool length_normalize) {
  CheckParallel(segments, embeddings);
  ScoreMatrix scores =
      ScoreAllPairsMixture(mix, prior, embeddings, length_normalize);
  return Assemble(segments, ClusterAhc(scores, stop));
}

DiarizationHypothesis DiarizeMixture(
    const MixturePlda &mix, const std::vector<SpeakerTypePrior> &priors,
    const std::vector<Segment> &segments,
    const std::vector<Embedding> &embeddings, const StopRule &stop,
    bool length_normalize) {
  CheckParallel(segments, embeddings);
  ScoreMatrix scores =
      ScoreAllPairsMixture(mix, priors, embeddings, length_normalize);
  return Assemble(segments, ClusterAhc(scores, stop));
}

DiarizationHypothesis DiarizeOracleSplit(
    const MixturePlda &mix, const std::vector<TypedInterval> &type_labels,
    const std::vector<Segment> &segments,
    const std::vector<Embedding> &embeddings,
    const std::array<double, kNumSpeakerTypes> &thresholds,
    bool length_normalize) {
  CheckParallel(segments, embeddings);
  if (type_labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "oracle split needs type labels");
  }
  std::array<std::vector<int>, kNumSpeakerTypes> split;
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment &s = segments[i];
    SpeakerType t = LookupTypeAt(type_labels, s.recording,
                                 0.5 * (s.onset + s.offset));
    split[static_cast<int>(t)].push_back(static_cast<int>(i));
  }
  std::vector<int> labels(segments.size(), -1);
  // Speaker names carry the type prefix so clusters of different types can
  // never share a label.
  std::map<int, std::string> names;
  int next_label = 0;
  for (SpeakerType t : kAllSpeakerTypes) {
    const std::vector<int> &members = split[static_cast<int>(t)];
    if (members.empty()) continue;
    std::vector<Embedding> part;
    part.reserve(members.size());
    for (int idx : members) part.push_back(embeddings[idx]);
    ScoreMatrix scores = ScoreAllPairsSingle(mix.component(t), part,
                                             length_normalize);
    std::vector<int> part_labels = ClusterAhc(
        scores, StopRule::Threshold(thresholds[static_cast<int>(t)]));
    int part_clusters = 0;
    for (int l : part_labels) part_clusters = std::max(part_clusters, l + 1);
    for (size_t k = 0; k < members.size(); ++k) {
      labels[members[k]] = next_label + part_labels[k];
    }
    for (int c = 0; c < part_clusters; ++c) {
      names[next_label + c] =
          std::string(1, SpeakerTypeChar(t)) + std::to_string(c);
    }
    next_label += part_clusters;
  }
  DiarizationHypothesis hyp;
  hyp.recording = segments[0].recording;
  hyp.turns = LabelsToTurns(segments, labels,
                            [&names](int l) { return names.at(l); });
  hyp.labels = std::move(labels);
  return hyp;
}

}  // namespace diarkit
