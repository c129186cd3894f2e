// core/segmentation.h

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

#ifndef DIARKIT_CORE_SEGMENTATION_H_
#define DIARKIT_CORE_SEGMENTATION_H_

#include <string>
#include <utility>
#include <vector>

#include "core/types.h"

namespace diarkit {

struct Interval {
  std::string recording;
  double onset = 0.0;
  double offset = 0.0;
};

struct TypedInterval {
  std::string recording;
  double onset = 0.0;
  double offset = 0.0;
  SpeakerType type = SpeakerType::kMale;
};

// Segments shorter than this are absorbed into their predecessor.
inline constexpr double kMinSegmentSeconds = 0.25;

// Sliding windows over [onset, offset): starts at onset, onset + hop, ...;
// each window is clipped to the region end; the first window reaching the
// end is the last one emitted.  A final window shorter than
// kMinSegmentSeconds is merged into the previous one.
std::vector<std::pair<double, double>> UniformSegment(double onset,
                                                      double offset,
                                                      double window,
                                                      double hop);

// Speech regions, lines of `<recording> <onset> <offset>`.
std::vector<Interval> ReadSadFile(const std::string &path);
void WriteSadFile(const std::vector<Interval> &regions,
                  const std::string &path);

// Speaker-type regions, lines of `<recording> <onset> <offset> <M|F|C>`.
std::vector<TypedInterval> ReadTypeLabels(const std::string &path);
void WriteTypeLabels(const std::vector<TypedInterval> &labels,
                     const std::string &path);

// Type of the label interval containing `time` (onset inclusive, offset
// exclusive) in the given recording; throws when uncovered.
SpeakerType LookupTypeAt(const std::vector<TypedInterval> &labels,
                         const std::string &recording, double time);

}  // namespace diarkit

#endif  // DIARKIT_CORE_SEGMENTATION_H_
