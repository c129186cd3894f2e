// core/plda.h

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

#ifndef DIARKIT_CORE_PLDA_H_
#define DIARKIT_CORE_PLDA_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "core/types.h"

namespace diarkit {

// Two-covariance PLDA in diagonalized form.  `transform` maps the centered
// raw space into a space where the within-class covariance is the identity
// and the between-class covariance is diag(psi), psi sorted descending.
// A finalized model is immutable; concurrent read-only scoring is safe.
class PldaModel {
 public:
  PldaModel() = default;
  PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd transform,
            Eigen::VectorXd psi);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::MatrixXd &transform() const { return transform_; }
  const Eigen::VectorXd &psi() const { return psi_; }

  // Optional length normalization, then centering and projection into the
  // diagonalized space.
  Embedding TransformRaw(const Embedding &z, bool length_normalize) const;

  // log p(u) with u in transformed space: sum_j log N(u_j; 0, psi_j + 1).
  double LogMarginal(const Eigen::VectorXd &u) const;

  // log of the same-speaker joint density of (u1, u2); per dimension the
  // covariance is [[psi+1, psi], [psi, psi+1]].  Symmetric in (u1, u2).
  double LogJointSame(const Eigen::VectorXd &u1,
                      const Eigen::VectorXd &u2) const;

 private:
  void FinalizeDerived();

  Eigen::VectorXd mean_;
  Eigen::MatrixXd transform_;
  Eigen::VectorXd psi_;

  // Cached per-dimension terms for the two Gaussians above.
  Eigen::ArrayXd inv_marg_var_;  // 1 / (psi + 1)
  Eigen::ArrayXd joint_diag_;    // (psi + 1) / (2 psi + 1)
  Eigen::ArrayXd joint_cross_;   // psi / (2 psi + 1)
  double marg_const_ = 0.0;
  double joint_const_ = 0.0;
};

// Same-vs-different-speaker log likelihood ratio on raw embeddings:
// LogJointSame(u1, u2) - (LogMarginal(u1) + LogMarginal(u2)).
double LogLrSingle(const PldaModel &model, const Embedding &z1,
                   const Embedding &z2, bool length_normalize);

struct PldaTrainResult {
  PldaModel model;
  // Per-example marginal log-likelihood: entry 0 at initialization, then one
  // entry after each EM iteration.  Non-decreasing up to roundoff.
  std::vector<double> loglik;
};

// EM estimation of the two-covariance model over per-speaker latent means;
// supports unequal counts per speaker.  Requires >= 2 speakers and at least
// one speaker with >= 2 embeddings.
PldaTrainResult TrainPlda(const LabeledEmbeddingSet &data, int iterations);

// Versioned little-endian binary model file:
// magic "PLDA", u32 version, u32 d, mean (d f64), transform (d x d f64,
// row-major), psi (d f64).
void SavePlda(const PldaModel &model, const std::string &path);
PldaModel LoadPlda(const std::string &path);
void SavePldaStream(const PldaModel &model, std::ostream &os);
PldaModel LoadPldaStream(std::istream &is, const std::string &origin);

}  // namespace diarkit

#endif  // DIARKIT_CORE_PLDA_H_
