// core/ahc.h

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

#ifndef DIARKIT_CORE_AHC_H_
#define DIARKIT_CORE_AHC_H_

#include <vector>

#include "core/score_matrix.h"

namespace diarkit {

// Mutually exclusive stopping rules for agglomerative clustering.
struct StopRule {
  enum class Kind { kThreshold, kNumSpeakers };
  Kind kind = Kind::kThreshold;
  double threshold = 0.0;
  int num_speakers = 0;

  static StopRule Threshold(double t) {
    return {Kind::kThreshold, t, 0};
  }
  static StopRule NumSpeakers(int k) {
    return {Kind::kNumSpeakers, 0.0, k};
  }
};

// Average-linkage agglomerative clustering on the similarity scores: the
// pair of clusters with the highest mean pairwise score merges next.  With
// a threshold rule, merging stops when the best merge scores below the
// threshold; with a speaker count, when that many clusters remain.  Equal
// best scores break toward the smallest (i, j) pair of cluster ids, a
// cluster's id being its smallest member index.  Returns per-segment labels
// numbered by first appearance, 0-based.
std::vector<int> ClusterAhc(const ScoreMatrix &scores, const StopRule &stop);

}  // namespace diarkit

#endif  // DIARKIT_CORE_AHC_H_
