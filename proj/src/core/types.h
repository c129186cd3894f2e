// core/types.h

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

#ifndef DIARKIT_CORE_TYPES_H_
#define DIARKIT_CORE_TYPES_H_

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "core/error.h"

namespace diarkit {

using Embedding = Eigen::VectorXd;

// Closed set of speaker types.  Array order is the canonical M, F, C order
// used by every file format and prior vector in the toolkit.
enum class SpeakerType : int { kMale = 0, kFemale = 1, kChild = 2 };

inline constexpr int kNumSpeakerTypes = 3;
inline constexpr SpeakerType kAllSpeakerTypes[kNumSpeakerTypes] = {
    SpeakerType::kMale, SpeakerType::kFemale, SpeakerType::kChild};

inline char SpeakerTypeChar(SpeakerType t) {
  switch (t) {
    case SpeakerType::kMale: return 'M';
    case SpeakerType::kFemale: return 'F';
    case SpeakerType::kChild: return 'C';
  }
  return '?';
}

inline SpeakerType ParseSpeakerType(const std::string &s) {
  if (s == "M" || s == "m") return SpeakerType::kMale;
  if (s == "F" || s == "f") return SpeakerType::kFemale;
  if (s == "C" || s == "c") return SpeakerType::kChild;
  throw Error(ErrorCode::kParse, "unknown speaker type '" + s + "'");
}

// Training-data container: one speaker id per embedding, plus an optional
// speaker -> type map for per-type training.
struct LabeledEmbeddingSet {
  std::vector<Embedding> embeddings;
  std::vector<std::string> speaker_ids;
  std::map<std::string, SpeakerType> speaker_types;

  size_t size() const { return embeddings.size(); }
};

}  // namespace diarkit

#endif  // DIARKIT_CORE_TYPES_H_
