// core/synth.cc

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

#include "core/synth.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "core/error.h"
#include "core/rng.h"

namespace diarkit {

namespace {

void ValidateSpec(const CorpusSpec &spec) {
  if (spec.dim < 1) throw Error(ErrorCode::kInvalidArgument, "dim must be >= 1");
  int total = 0;
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    const TypeParams &p = spec.types[g];
    int n = spec.speakers_per_type[g];
    if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative speaker count");
    total += n;
    if (n == 0) continue;
    if (p.offset.size() != spec.dim || p.between_var.size() != spec.dim ||
        p.within_var.size() != spec.dim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "type parameters must match dim");
    }
    if ((p.between_var.array() <= 0.0).any() ||
        (p.within_var.array() <= 0.0).any()) {
      throw Error(ErrorCode::kInvalidArgument, "variances must be > 0");
    }
  }
  if (total < 1) {
    throw Error(ErrorCode::kInvalidArgument, "no speakers requested");
  }
  if (spec.min_embeddings_per_speaker < 1 ||
      spec.max_embeddings_per_speaker < spec.min_embeddings_per_speaker) {
    throw Error(ErrorCode::kInvalidArgument, "bad embeddings-per-speaker range");
  }
}

Eigen::VectorXd SampleDiagNormal(CounterRng &rng, const Eigen::VectorXd &mean,
                                 const Eigen::VectorXd &var) {
  Eigen::VectorXd x(mean.size());
  for (Eigen::Index j = 0; j < mean.size(); ++j) {
    x[j] = mean[j] + std::sqrt(var[j]) * rng.Normal();
  }
  return x;
}

}  // namespace

CorpusSpec DefaultCorpusSpec(int dim,
                             std::array<int, kNumSpeakerTypes> speakers,
                             double separation, std::uint64_t seed) {
  if (dim < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "default offsets need dim >= 3");
  }
  if (!(separation >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "separation must be >= 0");
  }
  CorpusSpec spec;
  spec.dim = dim;
  spec.speakers_per_type = speakers;
  spec.seed = seed;
  // Orthogonal unit axes e_g scaled by s: type mean distance is s * sqrt(2),
  // set equal to separation * sigma_between (sigma 1 here).
  const double scale = separation / std::sqrt(2.0);
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    TypeParams &p = spec.types[g];
    p.offset = Eigen::VectorXd::Zero(dim);
    p.offset[g] = scale;
    p.between_var = Eigen::VectorXd::Ones(dim);
    p.within_var = Eigen::VectorXd::Ones(dim);
  }
  return spec;
}

SpeakerBank GenerateSpeakerBank(const CorpusSpec &spec) {
  ValidateSpec(spec);
  SpeakerBank bank;
  bank.spec = spec;
  CounterRng means_rng(spec.seed, 0);
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    SpeakerType t = static_cast<SpeakerType>(g);
    for (int s = 0; s < spec.speakers_per_type[g]; ++s) {
      SynthSpeaker spk;
      spk.id = std::string(1, SpeakerTypeChar(t)) + std::to_string(s);
      spk.type = t;
      spk.mean = SampleDiagNormal(means_rng, spec.types[g].offset,
                                  spec.types[g].between_var);
      bank.speakers.push_back(std::move(spk));
    }
  }
  return bank;
}

LabeledEmbeddingSet GenerateTrainingCorpus(const CorpusSpec &spec) {
  SpeakerBank bank = GenerateSpeakerBank(spec);
  CounterRng count_rng(spec.seed, 1);
  CounterRng emb_rng(spec.seed, 2);
  LabeledEmbeddingSet data;
  const int span =
      spec.max_embeddings_per_speaker - spec.min_embeddings_per_speaker + 1;
  for (const SynthSpeaker &spk : bank.speakers) {
    int count = spec.min_embeddings_per_speaker;
    if (span > 1) {
      count += static_cast<int>(count_rng.UniformInt(
          static_cast<std::uint64_t>(span)));
    }
    const Eigen::VectorXd &wv =
        spec.types[static_cast<int>(spk.type)].within_var;
    for (int e = 0; e < count; ++e) {
      data.embeddings.push_back(SampleDiagNormal(emb_rng, spk.mean, wv));
      data.speaker_ids.push_back(spk.id);
    }
    data.speaker_types[spk.id] = spk.type;
  }
  return data;
}

LabeledEmbeddingSet BalanceByType(const LabeledEmbeddingSet &data,
                                  int speakers_per_type, std::uint64_t seed) {
  if (speakers_per_type < 1) {
    throw Error(ErrorCode::kInvalidArgument, "speakers_per_type must be >= 1");
  }
  // Speakers that actually carry embeddings, per type, in sorted id order.
  std::array<std::vector<std::string>, kNumSpeakerTypes> pool;
  {
    std::set<std::string> seen(data.speaker_ids.begin(),
                               data.speaker_ids.end());
    for (const std::string &id : seen) {
      auto it = data.speaker_types.find(id);
      if (it == data.speaker_types.end()) {
        throw Error(ErrorCode::kNotFound, "speaker '" + id + "' has no type");
      }
      pool[static_cast<int>(it->second)].push_back(id);
    }
  }
  std::set<std::string> selected;
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    std::vector<std::string> &ids = pool[g];
    if (ids.empty()) continue;
    if (static_cast<int>(ids.size()) < speakers_per_type) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("type ") +
                      SpeakerTypeChar(static_cast<SpeakerType>(g)) +
                      " has " + std::to_string(ids.size()) +
                      " speakers, need " +
                      std::to_string(speakers_per_type));
    }
    // Partial Fisher-Yates; one stream per type.
    CounterRng rng(seed, static_cast<std::uint64_t>(g));
    for (int i = 0; i < speakers_per_type; ++i) {
      std::uint64_t j =
          static_cast<std::uint64_t>(i) +
          rng.UniformInt(static_cast<std::uint64_t>(ids.size() - i));
      std::swap(ids[i], ids[j]);
      selected.insert(ids[i]);
    }
  }
  LabeledEmbeddingSet out;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    if (!selected.count(data.speaker_ids[i])) continue;
    out.embeddings.push_back(data.embeddings[i]);
    out.speaker_ids.push_back(data.speaker_ids[i]);
  }
  for (const std::string &id : selected) {
    out.speaker_types[id] = data.speaker_types.at(id);
  }
  return out;
}

namespace {

struct RawTurn {
  double onset = 0.0;
  double offset = 0.0;
  int speaker = -1;  // index into bank.speakers
};

// Dominant turn ordering: longer duration first, then earlier onset, then
// lower speaker index.
bool MoreDominant(const RawTurn &a, const RawTurn &b) {
  double da = a.offset - a.onset, db = b.offset - b.onset;
  if (da != db) return da > db;
  if (a.onset != b.onset) return a.onset < b.onset;
  return a.speaker < b.speaker;
}

}  // namespace

Conversation GenerateConversation(const SpeakerBank &bank,
                                  const ConversationSpec &spec) {
  if (spec.participants.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "conversation needs speakers");
  }
  for (int idx : spec.participants) {
    if (idx < 0 || idx >= static_cast<int>(bank.speakers.size())) {
      throw Error(ErrorCode::kInvalidArgument, "participant out of range");
    }
  }
  if (!(spec.overlap_fraction >= 0.0 && spec.overlap_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap fraction must be in [0,1)");
  }
  if (!(spec.min_turn > 0.0) || spec.mean_turn < spec.min_turn) {
    throw Error(ErrorCode::kInvalidArgument, "bad turn length parameters");
  }
  if (!(spec.duration > spec.min_turn)) {
    throw Error(ErrorCode::kInvalidArgument, "duration too short");
  }
  CounterRng structure_rng(spec.seed, 0);
  CounterRng emb_rng(spec.seed, 1);
  const int np = static_cast<int>(spec.participants.size());

  // Turn chain.
  std::vector<RawTurn> raw;
  int prev_choice = -1;
  double prev_end = 0.0;
  double prev_free = 0.0;  // portion of the previous turn free of overlap
  while (true) {
    int choice;
    if (np == 1) {
      choice = 0;
    } else if (prev_choice < 0) {
      choice = static_cast<int>(
          structure_rng.UniformInt(static_cast<std::uint64_t>(np)));
    } else {
      choice = static_cast<int>(
          structure_rng.UniformInt(static_cast<std::uint64_t>(np - 1)));
      if (choice >= prev_choice) ++choice;
    }
    double d = spec.min_turn;
    if (spec.mean_turn > spec.min_turn) {
      d -= (spec.mean_turn - spec.min_turn) *
           std::log(1.0 - structure_rng.Uniform());
    }
    double onset;
    if (raw.empty()) {
      onset = 0.0;
    } else if (structure_rng.Uniform() < spec.gap_probability) {
      onset = prev_end - spec.mean_gap * std::log(1.0 -
                                                  structure_rng.Uniform());
    } else {
      // Overlap into the previous turn; the clamp keeps concurrency at two.
      double x = std::min(spec.overlap_fraction * d, 0.95 * prev_free);
      onset = prev_end - x;
    }
    double offset = std::min(onset + d, spec.duration);
    if (offset - onset < kMinSegmentSeconds) break;
    raw.push_back({onset, offset, spec.participants[choice]});
    prev_free = offset - std::max(onset, prev_end);
    prev_end = offset;
    prev_choice = choice;
    if (offset >= spec.duration) break;
  }

  Conversation conv;

  // Reference turns: merge touching or overlapping turns of one speaker.
  std::map<int, std::vector<const RawTurn *>> by_speaker;
  for (const RawTurn &t : raw) by_speaker[t.speaker].push_back(&t);
  for (auto &[spk, turns] : by_speaker) {
    std::sort(turns.begin(), turns.end(),
              [](const RawTurn *a, const RawTurn *b) {
                return a->onset < b->onset;
              });
    Turn cur{spec.recording, turns[0]->onset, turns[0]->offset,
             bank.speakers[spk].id};
    for (size_t i = 1; i < turns.size(); ++i) {
      if (turns[i]->onset <= cur.offset) {
        cur.offset = std::max(cur.offset, turns[i]->offset);
      } else {
        conv.reference.push_back(cur);
        cur.onset = turns[i]->onset;
        cur.offset = turns[i]->offset;
      }
    }
    conv.reference.push_back(cur);
  }
  std::sort(conv.reference.begin(), conv.reference.end(),
            [](const Turn &a, const Turn &b) {
              return a.onset < b.onset ||
                     (a.onset == b.onset && a.speaker < b.speaker);
            });

  // SAD: the merged union of all turns.
  for (const Turn &t : conv.reference) {
    if (!conv.sad.empty() && t.onset <= conv.sad.back().offset) {
      conv.sad.back().offset = std::max(conv.sad.back().offset, t.offset);
    } else {
      conv.sad.push_back({spec.recording, t.onset, t.offset});
    }
  }

  // Oracle type labels: dominant turn's type per homogeneous interval.
  {
    std::vector<double> times;
    for (const RawTurn &t : raw) {
      times.push_back(t.onset);
      times.push_back(t.offset);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (size_t i = 0; i + 1 < times.size(); ++i) {
      double a = times[i], b = times[i + 1];
      const RawTurn *dom = nullptr;
      for (const RawTurn &t : raw) {
        if (t.onset <= a && t.offset >= b) {
          if (dom == nullptr || MoreDominant(t, *dom)) dom = &t;
        }
      }
      if (dom == nullptr) continue;
      SpeakerType type = bank.speakers[dom->speaker].type;
      if (!conv.type_labels.empty() &&
          conv.type_labels.back().offset == a &&
          conv.type_labels.back().type == type) {
        conv.type_labels.back().offset = b;
      } else {
        conv.type_labels.push_back({spec.recording, a, b, type});
      }
    }
  }

  // Subsegments and embeddings from the dominant overlapping turn.
  conv.segments =
      SegmentRegions(conv.sad, spec.recording, spec.window, spec.hop);
  for (const Segment &s : conv.segments) {
    const RawTurn *owner = nullptr;
    double best_overlap = 0.0;
    for (const RawTurn &t : raw) {
      double ov = std::min(t.offset, s.offset) - std::max(t.onset, s.onset);
      if (ov <= 0.0) continue;
      if (owner == nullptr || ov > best_overlap ||
          (ov == best_overlap && MoreDominant(t, *owner))) {
        owner = &t;
        best_overlap = ov;
      }
    }
    if (owner == nullptr) {
      throw Error(ErrorCode::kNumeric, "segment outside every turn");
    }
    const SynthSpeaker &spk = bank.speakers[owner->speaker];
    conv.embeddings.push_back(SampleDiagNormal(
        emb_rng, spk.mean,
        bank.spec.types[static_cast<int>(spk.type)].within_var));
    conv.segment_types.push_back(spk.type);
  }
  return conv;
}

FramePosteriorSequence MakePosteriors(
    const std::vector<TypedInterval> &type_labels, double duration,
    double rate, double noise) {
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rate must be > 0");
  }
  if (!(noise >= 0.0 && noise <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must be in [0,1]");
  }
  FramePosteriorSequence seq;
  seq.rate = rate;
  const int frames = static_cast<int>(std::ceil(duration * rate));
  for (int t = 0; t < frames; ++t) {
    double center = (t + 0.5) / rate;
    std::array<double, kNumSpeakerTypes> row;
    row.fill(1.0 / 3.0);
    for (const TypedInterval &l : type_labels) {
      if (center >= l.onset && center < l.offset) {
        row.fill(noise / 3.0);
        row[static_cast<int>(l.type)] += 1.0 - noise;
        break;
      }
    }
    seq.rows.push_back(row);
  }
  return seq;
}

}  // namespace diarkit
