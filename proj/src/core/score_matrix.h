// core/score_matrix.h

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

#ifndef DIARKIT_CORE_SCORE_MATRIX_H_
#define DIARKIT_CORE_SCORE_MATRIX_H_

#include <vector>

#include "core/mixture.h"
#include "core/plda.h"
#include "core/types.h"

namespace diarkit {

// Pairs whose same-speaker hypothesis has zero prior mass (disjoint one-hot
// priors) score -inf analytically; the matrix stores this floor instead so
// that every entry stays finite.  No realistic merge threshold reaches it.
inline constexpr double kScoreFloor = -1e30;

// Symmetric pairwise log-likelihood-ratio matrix; the diagonal is unused and
// held at zero.
class ScoreMatrix {
 public:
  // Validates symmetry and finiteness of off-diagonal entries.
  explicit ScoreMatrix(Eigen::MatrixXd scores);

  int size() const { return static_cast<int>(scores_.rows()); }
  double at(int i, int j) const { return scores_(i, j); }
  const Eigen::MatrixXd &scores() const { return scores_; }

 private:
  Eigen::MatrixXd scores_;
};

ScoreMatrix ScoreAllPairsSingle(const PldaModel &model,
                                const std::vector<Embedding> &embeddings,
                                bool length_normalize);

// Shared recording-level prior (numerator weights = the prior itself).
ScoreMatrix ScoreAllPairsMixture(const MixturePlda &mix,
                                 const SpeakerTypePrior &prior,
                                 const std::vector<Embedding> &embeddings,
                                 bool length_normalize);

// Per-segment priors; numerator weights via NumeratorWeights.
ScoreMatrix ScoreAllPairsMixture(
    const MixturePlda &mix, const std::vector<SpeakerTypePrior> &priors,
    const std::vector<Embedding> &embeddings, bool length_normalize);

}  // namespace diarkit

#endif  // DIARKIT_CORE_SCORE_MATRIX_H_
