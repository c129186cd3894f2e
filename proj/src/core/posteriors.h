// core/posteriors.h

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

#ifndef DIARKIT_CORE_POSTERIORS_H_
#define DIARKIT_CORE_POSTERIORS_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "core/mixture.h"
#include "core/types.h"

namespace diarkit {

// Per-frame speaker-type posteriors at a fixed frame rate.  Frame t covers
// [t / rate, (t + 1) / rate) seconds.
struct FramePosteriorSequence {
  double rate = 0.0;  // frames per second
  std::vector<std::array<double, kNumSpeakerTypes>> rows;  // M, F, C
};

// Text format, one or more sections:
//   #post v1 rate=<fps> [rec=<id>]
//   <t-index> <pM> <pF> <pC>     (one line per frame, indices from 0)
// A section without rec= is keyed by "" and must then be the only section.
std::map<std::string, FramePosteriorSequence> ReadPosteriorFile(
    const std::string &path);
void WritePosteriorFile(const std::map<std::string, FramePosteriorSequence>
                            &sections,
                        const std::string &path);

// Exact recording match, else the single anonymous section.
const FramePosteriorSequence &FindPosteriors(
    const std::map<std::string, FramePosteriorSequence> &sections,
    const std::string &recording);

// Segment-level prior: the renormalized mean of the posterior rows whose
// frame centers (t + 0.5) / rate fall in [onset, offset).  Throws when no
// frame center lands inside the segment.
SpeakerTypePrior SegmentPrior(const FramePosteriorSequence &seq, double onset,
                              double offset);

}  // namespace diarkit

#endif  // DIARKIT_CORE_POSTERIORS_H_
