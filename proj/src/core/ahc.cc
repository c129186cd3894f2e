// core/ahc.cc

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

#include "core/ahc.h"

#include <limits>

#include "core/error.h"

namespace diarkit {

std::vector<int> ClusterAhc(const ScoreMatrix &scores, const StopRule &stop) {
  const int n = scores.size();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "empty score matrix");
  if (stop.kind == StopRule::Kind::kNumSpeakers) {
    if (stop.num_speakers < 1) {
      throw Error(ErrorCode::kInvalidArgument, "cluster count must be >= 1");
    }
    if (stop.num_speakers > n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cluster count exceeds segment count");
    }
  }
  // A cluster lives in the slot of its smallest member index, so slot order
  // is id order and the scan below visits candidate merges in lexicographic
  // id order.  pair_sum holds sums of pairwise scores between clusters;
  // averages divide by the member-count product; merges add sums.
  std::vector<int> size(n, 1);
  std::vector<char> alive(n, 1);
  Eigen::MatrixXd pair_sum = scores.scores();
  int clusters = n;
  const int target =
      stop.kind == StopRule::Kind::kNumSpeakers ? stop.num_speakers : 1;
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  while (clusters > target) {
    double best = -std::numeric_limits<double>::infinity();
    int best_i = -1, best_j = -1;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        double avg = pair_sum(i, j) /
                     (static_cast<double>(size[i]) * size[j]);
        // Strict > keeps the first (smallest lexicographic) best pair.
        if (avg > best) {
          best = avg;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (stop.kind == StopRule::Kind::kThreshold && best < stop.threshold) {
      break;
    }
    for (int k = 0; k < n; ++k) {
      if (!alive[k] || k == best_i || k == best_j) continue;
      pair_sum(best_i, k) = pair_sum(best_i, k) + pair_sum(best_j, k);
      pair_sum(k, best_i) = pair_sum(best_i, k);
    }
    size[best_i] += size[best_j];
    alive[best_j] = 0;
    for (int k = 0; k < n; ++k) {
      if (label[k] == best_j) label[k] = best_i;
    }
    --clusters;
  }
  // Rename by first appearance.
  std::vector<int> rename(n, -1);
  std::vector<int> out(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (rename[label[i]] < 0) rename[label[i]] = next++;
    out[i] = rename[label[i]];
  }
  return out;
}

}  // namespace diarkit
