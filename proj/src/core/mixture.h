// core/mixture.h

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

#ifndef DIARKIT_CORE_MIXTURE_H_
#define DIARKIT_CORE_MIXTURE_H_

#include <array>
#include <string>

#include "core/plda.h"
#include "core/types.h"

namespace diarkit {

// Probability distribution over the three speaker types, in M, F, C order.
// One-hot priors are valid (oracle mode).
struct SpeakerTypePrior {
  std::array<double, kNumSpeakerTypes> p{0.0, 0.0, 0.0};

  double of(SpeakerType t) const { return p[static_cast<int>(t)]; }
};

// Throws on entries outside [0,1] or a sum off 1 by more than 1e-9.
void ValidatePrior(const SpeakerTypePrior &prior);

SpeakerTypePrior UniformPrior();
// The 40/40/20 female/child/male default.
SpeakerTypePrior NonuniformPrior();
SpeakerTypePrior OraclePrior(SpeakerType t);
SpeakerTypePrior ExplicitPrior(double m, double f, double c);
// Grammar: "uniform" | "paper" | "oracle:<M|F|C>" | "F=0.4,C=0.4,M=0.2".
SpeakerTypePrior ParsePrior(const std::string &text);

// One PLDA component per speaker type plus a default prior.  Immutable
// after construction; concurrent scoring is safe.
class MixturePlda {
 public:
  MixturePlda(PldaModel male, PldaModel female, PldaModel child,
              SpeakerTypePrior default_prior);

  int dim() const { return components_[0].dim(); }
  const PldaModel &component(SpeakerType t) const {
    return components_[static_cast<int>(t)];
  }
  const SpeakerTypePrior &default_prior() const { return default_prior_; }

 private:
  std::array<PldaModel, kNumSpeakerTypes> components_;
  SpeakerTypePrior default_prior_;
};

// log(sum_g w[g] * exp(t[g])) over entries with w[g] > 0, computed
// stably; -inf when every weight vanishes.  A single surviving unit weight
// returns t[g] exactly, which makes one-hot collapse exact.
double WeightedLogSumExp(const std::array<double, kNumSpeakerTypes> &w,
                         const std::array<double, kNumSpeakerTypes> &t);

// Same-speaker type weights when the two segments carry their own priors:
// the normalized elementwise product.  All-zero products (disjoint one-hot
// priors) yield all-zero weights, i.e. the same-speaker hypothesis has no
// mass.
std::array<double, kNumSpeakerTypes> NumeratorWeights(
    const SpeakerTypePrior &prior1, const SpeakerTypePrior &prior2);

// log sum_g P(g) p(z1, z2 | same speaker of type g).  Returns -inf when the
// combined prior has no mass.
double LogNumeratorMixture(const MixturePlda &mix,
                           const SpeakerTypePrior &prior1,
                           const SpeakerTypePrior &prior2, const Embedding &z1,
                           const Embedding &z2, bool length_normalize);

// log sum_{g1,g2} P(g1) P(g2) p(z1 | g1) p(z2 | g2); the nine-term sum
// factorizes into one log-sum per side and this computes the factored form.
double LogDenominatorMixture(const MixturePlda &mix,
                             const SpeakerTypePrior &prior1,
                             const SpeakerTypePrior &prior2,
                             const Embedding &z1, const Embedding &z2,
                             bool length_normalize);

// Numerator minus denominator, with per-segment priors combined by
// NumeratorWeights.
double LogLrMixture(const MixturePlda &mix, const SpeakerTypePrior &prior1,
                    const SpeakerTypePrior &prior2, const Embedding &z1,
                    const Embedding &z2, bool length_normalize);

// Recording-level constant prior: the numerator weights are the prior
// itself.  With a one-hot prior this equals LogLrSingle of that component.
double LogLrMixtureShared(const MixturePlda &mix,
                          const SpeakerTypePrior &prior, const Embedding &z1,
                          const Embedding &z2, bool length_normalize);

// Container file: magic "MPLD", u32 version, default prior (3 f64, M F C),
// then one tagged PLDA block per type in M, F, C order.
void SaveMixture(const MixturePlda &mix, const std::string &path);
MixturePlda LoadMixture(const std::string &path);

}  // namespace diarkit

#endif  // DIARKIT_CORE_MIXTURE_H_
