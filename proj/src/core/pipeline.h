// core/pipeline.h

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

#ifndef DIARKIT_CORE_PIPELINE_H_
#define DIARKIT_CORE_PIPELINE_H_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "core/ahc.h"
#include "core/mixture.h"
#include "core/plda.h"
#include "core/posteriors.h"
#include "core/rttm.h"
#include "core/segmentation.h"
#include "core/types.h"

namespace diarkit {

struct Segment {
  std::string recording;
  double onset = 0.0;
  double offset = 0.0;
  int index = 0;  // contiguous per recording
};

struct DiarizationHypothesis {
  std::string recording;
  std::vector<int> labels;  // per-segment cluster id, 0-based
  std::vector<Turn> turns;  // merged same-label subsegments
};

// Uniform windows over one recording's SAD regions (validated sorted and
// non-overlapping), indices contiguous in time order.
std::vector<Segment> SegmentRegions(const std::vector<Interval> &sad,
                                    const std::string &recording,
                                    double window, double hop);

// Eq-style per-segment priors from frame posteriors (one per segment).
std::vector<SpeakerTypePrior> SegmentPriorsFromPosteriors(
    const FramePosteriorSequence &posteriors,
    const std::vector<Segment> &segments);

// Speaker name for cluster label i, "spk<i>".
std::string SpeakerName(int label);

// Same-label subsegments that touch or overlap merge into maximal turns;
// distinct labels keep their full extents.  `namer` maps a cluster label to
// its speaker string (default SpeakerName).
std::vector<Turn> LabelsToTurns(
    const std::vector<Segment> &segments, const std::vector<int> &labels,
    const std::function<std::string(int)> &namer = SpeakerName);

DiarizationHypothesis DiarizeSingle(const PldaModel &model,
                                    const std::vector<Segment> &segments,
                                    const std::vector<Embedding> &embeddings,
                                    const StopRule &stop,
                                    bool length_normalize);

// Recording-level shared prior.
DiarizationHypothesis DiarizeMixture(const MixturePlda &mix,
                                     const SpeakerTypePrior &prior,
                                     const std::vector<Segment> &segments,
                                     const std::vector<Embedding> &embeddings,
                                     const StopRule &stop,
                                     bool length_normalize);

// Per-segment priors (from frame posteriors).
DiarizationHypothesis DiarizeMixture(
    const MixturePlda &mix, const std::vector<SpeakerTypePrior> &priors,
    const std::vector<Segment> &segments,
    const std::vector<Embedding> &embeddings, const StopRule &stop,
    bool length_normalize);

// Splits segments by the type label covering each segment midpoint, clusters
// every split with its own component and threshold, then numbers speakers
// globally so clusters never merge across types.
DiarizationHypothesis DiarizeOracleSplit(
    const MixturePlda &mix, const std::vector<TypedInterval> &type_labels,
    const std::vector<Segment> &segments,
    const std::vector<Embedding> &embeddings,
    const std::array<double, kNumSpeakerTypes> &thresholds,
    bool length_normalize);

}  // namespace diarkit

#endif  // DIARKIT_CORE_PIPELINE_H_
