// core/score_matrix.cc

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

#include "core/score_matrix.h"

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "core/error.h"

namespace diarkit {

ScoreMatrix::ScoreMatrix(Eigen::MatrixXd scores)
    : scores_(std::move(scores)) {
  if (scores_.rows() != scores_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "score matrix must be square");
  }
  const int n = static_cast<int>(scores_.rows());
  for (int i = 0; i < n; ++i) {
    scores_(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(scores_(i, j)) || !std::isfinite(scores_(j, i))) {
        throw Error(ErrorCode::kNumeric, "non-finite pair score");
      }
      if (scores_(i, j) != scores_(j, i)) {
        throw Error(ErrorCode::kInvalidArgument, "score matrix asymmetric");
      }
    }
  }
}

ScoreMatrix ScoreAllPairsSingle(const PldaModel &model,
                                const std::vector<Embedding> &embeddings,
                                bool length_normalize) {
  const int n = static_cast<int>(embeddings.size());
  // Per-segment transform and marginal computed once; each pair needs only
  // the joint term.
  std::vector<Eigen::VectorXd> u(n);
  std::vector<double> lm(n);
  for (int i = 0; i < n; ++i) {
    u[i] = model.TransformRaw(embeddings[i], length_normalize);
    lm[i] = model.LogMarginal(u[i]);
  }
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double lr = model.LogJointSame(u[i], u[j]) - (lm[i] + lm[j]);
      scores(i, j) = lr;
      scores(j, i) = lr;
    }
  }
  return ScoreMatrix(std::move(scores));
}

namespace {

using TypeWeights = std::array<double, kNumSpeakerTypes>;

// Common mixture scorer.  den_prior[i] weights segment i's denominator
// log-sum (cached per segment); pair_weights(i, j) yields the numerator
// weights.  The parenthesization num - (den_i + den_j) keeps one-hot priors
// bit-identical to the single-model scorer.
ScoreMatrix ScoreMixtureImpl(
    const MixturePlda &mix, const std::vector<Embedding> &embeddings,
    bool length_normalize,
    const std::function<const TypeWeights &(int)> &den_prior,
    const std::function<TypeWeights(int, int)> &pair_weights) {
  const int n = static_cast<int>(embeddings.size());
  const double kNegInf = -std::numeric_limits<double>::infinity();
  std::array<std::vector<Eigen::VectorXd>, kNumSpeakerTypes> u;
  for (auto &v : u) v.resize(n);
  std::vector<double> den(n);
  for (int i = 0; i < n; ++i) {
    TypeWeights terms;
    terms.fill(kNegInf);
    for (int g = 0; g < kNumSpeakerTypes; ++g) {
      const PldaModel &m = mix.component(static_cast<SpeakerType>(g));
      u[g][i] = m.TransformRaw(embeddings[i], length_normalize);
      if (den_prior(i)[g] > 0.0) terms[g] = m.LogMarginal(u[g][i]);
    }
    den[i] = WeightedLogSumExp(den_prior(i), terms);
  }
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      TypeWeights w = pair_weights(i, j);
      TypeWeights terms;
      terms.fill(kNegInf);
      for (int g = 0; g < kNumSpeakerTypes; ++g) {
        if (w[g] <= 0.0) continue;
        const PldaModel &m = mix.component(static_cast<SpeakerType>(g));
        terms[g] = m.LogJointSame(u[g][i], u[g][j]);
      }
      double lr = WeightedLogSumExp(w, terms) - (den[i] + den[j]);
      if (std::isinf(lr) && lr < 0.0) lr = kScoreFloor;
      scores(i, j) = lr;
      scores(j, i) = lr;
    }
  }
  return ScoreMatrix(std::move(scores));
}

}  // namespace

ScoreMatrix ScoreAllPairsMixture(const MixturePlda &mix,
                                 const SpeakerTypePrior &prior,
                                 const std::vector<Embedding> &embeddings,
                                 bool length_normalize) {
  ValidatePrior(prior);
  // Recording-level prior: numerator weights are the prior itself for every
  // pair; combining a prior with itself would square the weights instead.
  return ScoreMixtureImpl(
      mix, embeddings, length_normalize,
      [&prior](int) -> const TypeWeights & { return prior.p; },
      [&prior](int, int) { return prior.p; });
}

ScoreMatrix ScoreAllPairsMixture(
    const MixturePlda &mix, const std::vector<SpeakerTypePrior> &priors,
    const std::vector<Embedding> &embeddings, bool length_normalize) {
  if (priors.size() != embeddings.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one prior per embedding");
  }
  for (const auto &p : priors) ValidatePrior(p);
  return ScoreMixtureImpl(
      mix, embeddings, length_normalize,
      [&priors](int i) -> const TypeWeights & { return priors[i].p; },
      [&priors](int i, int j) {
        return NumeratorWeights(priors[i], priors[j]);
      });
}

}  // namespace diarkit
