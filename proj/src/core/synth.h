// core/synth.h

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

#ifndef DIARKIT_CORE_SYNTH_H_
#define DIARKIT_CORE_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/pipeline.h"
#include "core/posteriors.h"
#include "core/rttm.h"
#include "core/segmentation.h"
#include "core/types.h"

namespace diarkit {

// Generating parameters of one speaker type; diagonal covariances.
struct TypeParams {
  Eigen::VectorXd offset;       // type mean
  Eigen::VectorXd between_var;  // speaker means around the offset
  Eigen::VectorXd within_var;   // embeddings around the speaker mean
};

struct CorpusSpec {
  int dim = 16;
  std::array<TypeParams, kNumSpeakerTypes> types;  // M, F, C
  std::array<int, kNumSpeakerTypes> speakers_per_type{0, 0, 0};
  int min_embeddings_per_speaker = 8;
  int max_embeddings_per_speaker = 8;
  std::uint64_t seed = 0;
};

// Isotropic unit variances with type offsets along the first three axes,
// scaled so the distance between two type means is `separation` times the
// per-dimension between-speaker standard deviation.  Requires dim >= 3.
CorpusSpec DefaultCorpusSpec(int dim,
                             std::array<int, kNumSpeakerTypes> speakers,
                             double separation, std::uint64_t seed);

struct SynthSpeaker {
  std::string id;  // "<type char><index>", unique across types
  SpeakerType type = SpeakerType::kMale;
  Eigen::VectorXd mean;
};

// Speaker identities with latent means; retains the spec so conversations
// can sample embeddings from the same within-class distributions.
struct SpeakerBank {
  CorpusSpec spec;
  std::vector<SynthSpeaker> speakers;  // M block, F block, C block
};

// RNG streams (seed = spec.seed): 0 speaker means, 1 embedding counts
// (untouched when the count range is a single value), 2 embeddings.  Draws
// proceed in speaker order, dimensions innermost.
SpeakerBank GenerateSpeakerBank(const CorpusSpec &spec);
LabeledEmbeddingSet GenerateTrainingCorpus(const CorpusSpec &spec);

// Uniform without-replacement sample of exactly `speakers_per_type` speakers
// of each present type, embeddings kept in input order.  RNG stream = type
// index over `seed`.
LabeledEmbeddingSet BalanceByType(const LabeledEmbeddingSet &data,
                                  int speakers_per_type, std::uint64_t seed);

struct ConversationSpec {
  std::string recording = "rec";
  double duration = 60.0;          // seconds of timeline
  std::vector<int> participants;   // indices into SpeakerBank::speakers
  double mean_turn = 3.0;          // mean turn length, exponential tail
  double min_turn = 1.5;
  double overlap_fraction = 0.0;   // rho in [0, 1)
  double gap_probability = 0.25;   // chance a turn starts after silence
  double mean_gap = 0.75;
  double window = 1.5;
  double hop = 0.75;
  std::uint64_t seed = 0;
};

struct Conversation {
  std::vector<Interval> sad;               // merged speech regions
  std::vector<Turn> reference;             // ground-truth turns
  std::vector<TypedInterval> type_labels;  // dominant type per interval
  std::vector<Segment> segments;           // uniform subsegments over SAD
  std::vector<Embedding> embeddings;       // one per segment
  std::vector<SpeakerType> segment_types;  // owning speaker's type
};

// Turn chain with exponential lengths; each non-initial turn either follows
// a gap or overlaps its predecessor by rho * its own length (clamped to
// keep at most two speakers concurrent).  Segment embeddings draw from the
// dominant overlapping turn's speaker: largest overlap with the segment,
// ties to the longer turn, then the earlier onset.  RNG streams over
// spec.seed: 0 structure, 1 embeddings.
Conversation GenerateConversation(const SpeakerBank &bank,
                                  const ConversationSpec &spec);

// Frame posteriors from the oracle labels: rows are
// (1 - noise) * onehot(label type) + noise * uniform; frames outside every
// label get the uniform row.  Deterministic, no sampling.
FramePosteriorSequence MakePosteriors(
    const std::vector<TypedInterval> &type_labels, double duration,
    double rate, double noise);

}  // namespace diarkit

#endif  // DIARKIT_CORE_SYNTH_H_
