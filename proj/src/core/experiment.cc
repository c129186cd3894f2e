// core/experiment.cc

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

#include "core/experiment.h"

#include <algorithm>
#include <cstdio>

#include "core/der.h"
#include "core/error.h"
#include "core/kvconfig.h"
#include "core/mixture.h"
#include "core/pipeline.h"
#include "core/plda.h"
#include "core/rng.h"
#include "core/synth.h"

namespace diarkit {

namespace {

// Synthetic embeddings live in the generating Gaussian geometry, so the
// suites never length normalize.
constexpr bool kNormalize = false;

using Kv = std::map<std::string, std::string>;

CorpusSpec ScaledSpec(int dim, std::array<int, kNumSpeakerTypes> speakers,
                      double separation, double within_scale,
                      std::uint64_t seed) {
  CorpusSpec spec = DefaultCorpusSpec(dim, speakers, separation, seed);
  for (auto &t : spec.types) t.within_var *= within_scale;
  return spec;
}

LabeledEmbeddingSet FilterType(const LabeledEmbeddingSet &data,
                               SpeakerType type) {
  LabeledEmbeddingSet out;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    if (data.speaker_types.at(data.speaker_ids[i]) != type) continue;
    out.embeddings.push_back(data.embeddings[i]);
    out.speaker_ids.push_back(data.speaker_ids[i]);
  }
  for (const auto &[id, t] : data.speaker_types) {
    if (t == type) out.speaker_types[id] = t;
  }
  return out;
}

MixturePlda TrainMixtureFromCorpus(const LabeledEmbeddingSet &data,
                                   int iterations,
                                   const SpeakerTypePrior &prior) {
  std::array<PldaModel, kNumSpeakerTypes> parts;
  for (SpeakerType t : kAllSpeakerTypes) {
    parts[static_cast<int>(t)] =
        TrainPlda(FilterType(data, t), iterations).model;
  }
  return MixturePlda(std::move(parts[0]), std::move(parts[1]),
                     std::move(parts[2]), prior);
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void AppendMedians(std::vector<ExperimentRow> *rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> per_condition;
  for (const auto &r : *rows) {
    if (!per_condition.count(r.condition)) order.push_back(r.condition);
    per_condition[r.condition].push_back(r.der);
  }
  std::string suite = rows->front().suite;
  for (const std::string &c : order) {
    rows->push_back({suite, c, "median", Median(per_condition[c])});
  }
}

ConversationSpec ConvSpec(const Kv &kv, const std::string &recording,
                          int participants, std::uint64_t seed) {
  ConversationSpec spec;
  spec.recording = recording;
  spec.duration = KvDouble(kv, "duration", 60.0);
  spec.participants.resize(participants);
  for (int i = 0; i < participants; ++i) spec.participants[i] = i;
  spec.mean_turn = KvDouble(kv, "mean_turn", 3.0);
  spec.min_turn = KvDouble(kv, "min_turn", 1.5);
  spec.overlap_fraction = KvDouble(kv, "overlap_fraction", 0.1);
  spec.gap_probability = KvDouble(kv, "gap_probability", 0.25);
  spec.mean_gap = KvDouble(kv, "mean_gap", 0.75);
  spec.window = KvDouble(kv, "window", 1.5);
  spec.hop = KvDouble(kv, "hop", 0.75);
  spec.seed = seed;
  return spec;
}

double EvalDer(const Conversation &conv, const DiarizationHypothesis &hyp) {
  return ComputeDer(conv.reference, hyp.turns).der();
}

std::vector<ExperimentRow> SuiteOracleVsBaseline(const Kv &kv) {
  const std::uint64_t seed = KvSeed(kv, "seed", 7);
  const int seeds = KvInt(kv, "seeds", 10);
  const int dim = KvInt(kv, "dim", 16);
  const double separation = KvDouble(kv, "separation", 2.0);
  const double within_scale = KvDouble(kv, "within_scale", 1.0);
  const int train_speakers = KvInt(kv, "train_speakers", 40);
  const int iters = KvInt(kv, "iterations", 10);
  const double t_oracle = KvDouble(kv, "oracle_threshold", 0.0);
  const double t_baseline = KvDouble(kv, "baseline_threshold", -0.2);

  CorpusSpec train_spec =
      ScaledSpec(dim, {train_speakers, train_speakers, train_speakers},
                 separation, within_scale, DeriveSeed(seed, 100));
  LabeledEmbeddingSet train = GenerateTrainingCorpus(train_spec);
  PldaModel single = TrainPlda(train, iters).model;
  MixturePlda mix = TrainMixtureFromCorpus(train, iters, UniformPrior());

  std::vector<ExperimentRow> rows;
  for (int i = 0; i < seeds; ++i) {
    CorpusSpec bank_spec = ScaledSpec(dim, {2, 2, 2}, separation,
                                      within_scale, DeriveSeed(seed, 200 + i));
    SpeakerBank bank = GenerateSpeakerBank(bank_spec);
    Conversation conv = GenerateConversation(
        bank, ConvSpec(kv, "conv" + std::to_string(i), 6,
                       DeriveSeed(seed, 300 + i)));
    DiarizationHypothesis base =
        DiarizeSingle(single, conv.segments, conv.embeddings,
                      StopRule::Threshold(t_baseline), kNormalize);
    DiarizationHypothesis oracle = DiarizeOracleSplit(
        mix, conv.type_labels, conv.segments, conv.embeddings,
        {t_oracle, t_oracle, t_oracle}, kNormalize);
    rows.push_back({"oracle-vs-baseline", "baseline", std::to_string(i),
                    EvalDer(conv, base)});
    rows.push_back({"oracle-vs-baseline", "oracle", std::to_string(i),
                    EvalDer(conv, oracle)});
  }
  AppendMedians(&rows);
  return rows;
}

std::vector<ExperimentRow> SuiteBalancedVsUnbalanced(const Kv &kv) {
  const std::uint64_t seed = KvSeed(kv, "seed", 7);
  const int seeds = KvInt(kv, "seeds", 10);
  const int dim = KvInt(kv, "dim", 16);
  const double separation = KvDouble(kv, "separation", 3.0);
  // Speaker crispness where 300 speakers per type already estimate the
  // component well, so balancing sheds 90% of the adult data losslessly.
  const double within_scale = KvDouble(kv, "within_scale", 0.5);
  const int pool_m = KvInt(kv, "pool_m", 3000);
  const int pool_f = KvInt(kv, "pool_f", 3000);
  const int pool_c = KvInt(kv, "pool_c", 300);
  const int balance_to = KvInt(kv, "balance_to", 300);
  const int iters = KvInt(kv, "iterations", 10);
  const double threshold = KvDouble(kv, "threshold", 0.0);

  CorpusSpec pool_spec = ScaledSpec(dim, {pool_m, pool_f, pool_c},
                                    separation, within_scale,
                                    DeriveSeed(seed, 100));
  LabeledEmbeddingSet pool = GenerateTrainingCorpus(pool_spec);
  LabeledEmbeddingSet balanced =
      BalanceByType(pool, balance_to, DeriveSeed(seed, 101));
  SpeakerTypePrior prior = NonuniformPrior();
  MixturePlda mix_bal = TrainMixtureFromCorpus(balanced, iters, prior);
  MixturePlda mix_unbal = TrainMixtureFromCorpus(pool, iters, prior);

  std::vector<ExperimentRow> rows;
  for (int i = 0; i < seeds; ++i) {
    // Child-heavy test conversations probe the minority training type.
    CorpusSpec bank_spec = ScaledSpec(dim, {1, 1, 4}, separation,
                                      within_scale, DeriveSeed(seed, 200 + i));
    SpeakerBank bank = GenerateSpeakerBank(bank_spec);
    Conversation conv = GenerateConversation(
        bank, ConvSpec(kv, "conv" + std::to_string(i), 6,
                       DeriveSeed(seed, 300 + i)));
    DiarizationHypothesis bal =
        DiarizeMixture(mix_bal, prior, conv.segments, conv.embeddings,
                       StopRule::Threshold(threshold), kNormalize);
    DiarizationHypothesis unbal =
        DiarizeMixture(mix_unbal, prior, conv.segments, conv.embeddings,
                       StopRule::Threshold(threshold), kNormalize);
    rows.push_back({"balanced-vs-unbalanced", "balanced", std::to_string(i),
                    EvalDer(conv, bal)});
    rows.push_back({"balanced-vs-unbalanced", "unbalanced",
                    std::to_string(i), EvalDer(conv, unbal)});
  }
  AppendMedians(&rows);
  return rows;
}

std::vector<ExperimentRow> SuitePriorSweep(const Kv &kv) {
  const std::uint64_t seed = KvSeed(kv, "seed", 7);
  const int seeds = KvInt(kv, "seeds", 10);
  const int dim = KvInt(kv, "dim", 16);
  const double separation = KvDouble(kv, "separation", 2.0);
  const double within_scale = KvDouble(kv, "within_scale", 1.0);
  const int train_speakers = KvInt(kv, "train_speakers", 40);
  const int iters = KvInt(kv, "iterations", 10);
  const double threshold = KvDouble(kv, "threshold", 0.0);

  CorpusSpec train_spec =
      ScaledSpec(dim, {train_speakers, train_speakers, train_speakers},
                 separation, within_scale, DeriveSeed(seed, 100));
  MixturePlda mix = TrainMixtureFromCorpus(GenerateTrainingCorpus(train_spec),
                                           iters, UniformPrior());

  std::vector<ExperimentRow> rows;
  for (int i = 0; i < seeds; ++i) {
    CorpusSpec bank_spec = ScaledSpec(dim, {2, 2, 2}, separation,
                                      within_scale, DeriveSeed(seed, 200 + i));
    SpeakerBank bank = GenerateSpeakerBank(bank_spec);
    Conversation conv = GenerateConversation(
        bank, ConvSpec(kv, "conv" + std::to_string(i), 6,
                       DeriveSeed(seed, 300 + i)));
    StopRule stop = StopRule::Threshold(threshold);
    DiarizationHypothesis uni =
        DiarizeMixture(mix, UniformPrior(), conv.segments, conv.embeddings,
                       stop, kNormalize);
    DiarizationHypothesis paper =
        DiarizeMixture(mix, NonuniformPrior(), conv.segments,
                       conv.embeddings, stop, kNormalize);
    // Oracle condition: per-segment one-hot priors from the label track.
    std::vector<SpeakerTypePrior> oracle_priors;
    for (const Segment &s : conv.segments) {
      oracle_priors.push_back(OraclePrior(LookupTypeAt(
          conv.type_labels, s.recording, 0.5 * (s.onset + s.offset))));
    }
    DiarizationHypothesis oracle =
        DiarizeMixture(mix, oracle_priors, conv.segments, conv.embeddings,
                       stop, kNormalize);
    rows.push_back({"prior-sweep", "uniform", std::to_string(i),
                    EvalDer(conv, uni)});
    rows.push_back({"prior-sweep", "paper", std::to_string(i),
                    EvalDer(conv, paper)});
    rows.push_back({"prior-sweep", "oracle", std::to_string(i),
                    EvalDer(conv, oracle)});
  }
  AppendMedians(&rows);
  return rows;
}

}  // namespace

std::vector<ExperimentRow> RunExperimentSuite(
    const std::string &suite,
    const std::map<std::string, std::string> &config) {
  if (suite == "oracle-vs-baseline") return SuiteOracleVsBaseline(config);
  if (suite == "balanced-vs-unbalanced") {
    return SuiteBalancedVsUnbalanced(config);
  }
  if (suite == "prior-sweep") return SuitePriorSweep(config);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown suite '" + suite +
                  "'; available: oracle-vs-baseline, "
                  "balanced-vs-unbalanced, prior-sweep");
}

std::string FormatExperimentTable(const std::vector<ExperimentRow> &rows) {
  std::string out = "suite\tcondition\tseed\tder\n";
  char buf[32];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.der);
    out += r.suite + "\t" + r.condition + "\t" + r.seed + "\t" + buf + "\n";
  }
  return out;
}

}  // namespace diarkit
