// capi/capi.cc: extern "C" surface over the core library.

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

#include "diarkit/diarkit.h"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "core/der.h"
#include "core/embedding.h"
#include "core/error.h"
#include "core/experiment.h"
#include "core/kvconfig.h"
#include "core/mixture.h"
#include "core/pipeline.h"
#include "core/plda.h"
#include "core/posteriors.h"
#include "core/rng.h"
#include "core/rttm.h"
#include "core/score_matrix.h"
#include "core/segmentation.h"
#include "core/synth.h"

using namespace diarkit;

struct diarkit_plda {
  PldaModel model;
};

struct diarkit_mixture {
  MixturePlda model;
};

namespace {

thread_local std::string t_last_error;

diarkit_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return DIARKIT_INVALID_ARGUMENT;
    case ErrorCode::kNotFound:
      return DIARKIT_NOT_FOUND;
    case ErrorCode::kParse:
      return DIARKIT_PARSE_ERROR;
    case ErrorCode::kNumeric:
      return DIARKIT_NUMERIC_ERROR;
    case ErrorCode::kIo:
      return DIARKIT_IO_ERROR;
  }
  return DIARKIT_UNKNOWN_ERROR;
}

template <typename Fn>
diarkit_status Wrap(Fn fn) {
  try {
    fn();
    return DIARKIT_OK;
  } catch (const Error &e) {
    t_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::exception &e) {
    t_last_error = e.what();
    return DIARKIT_UNKNOWN_ERROR;
  } catch (...) {
    t_last_error = "unknown failure";
    return DIARKIT_UNKNOWN_ERROR;
  }
}

void RequireArg(bool ok, const char *what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

Embedding ToEmbedding(const double *p, size_t dim) {
  RequireArg(p != nullptr && dim > 0, "null embedding");
  return Eigen::Map<const Eigen::VectorXd>(p, static_cast<Eigen::Index>(dim));
}

char *CopyString(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void CopyLoglik(const std::vector<double> &values, double **out,
                size_t *out_len) {
  if (out != nullptr) {
    size_t bytes = std::max<size_t>(1, values.size()) * sizeof(double);
    *out = static_cast<double *>(std::malloc(bytes));
    if (*out == nullptr) throw std::bad_alloc();
    std::memcpy(*out, values.data(), values.size() * sizeof(double));
  }
  if (out_len != nullptr) *out_len = values.size();
}

LabeledEmbeddingSet LoadTrainingData(const char *embeddings_path,
                                     const char *labels_path,
                                     int length_normalize) {
  RequireArg(embeddings_path != nullptr, "null embeddings path");
  RequireArg(labels_path != nullptr, "null labels path");
  EmbeddingFile file = ReadEmbeddingFile(embeddings_path);
  if (length_normalize) {
    for (auto &rec : file.records) rec.values = LengthNormalize(rec.values);
  }
  return BuildLabeledSet(file, ReadSpeakerLabels(labels_path));
}

LabeledEmbeddingSet FilterByType(const LabeledEmbeddingSet &data,
                                 SpeakerType type) {
  LabeledEmbeddingSet out;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    auto it = data.speaker_types.find(data.speaker_ids[i]);
    if (it == data.speaker_types.end()) {
      throw Error(ErrorCode::kNotFound,
                  "speaker '" + data.speaker_ids[i] + "' has no type label");
    }
    if (it->second != type) continue;
    out.embeddings.push_back(data.embeddings[i]);
    out.speaker_ids.push_back(data.speaker_ids[i]);
  }
  for (const auto &[id, t] : data.speaker_types) {
    if (t == type) out.speaker_types[id] = t;
  }
  return out;
}

StopRule ParseStop(const std::string &spec) {
  if (spec.rfind("thresh:", 0) == 0) {
    try {
      size_t pos = 0;
      double t = std::stod(spec.substr(7), &pos);
      if (pos != spec.size() - 7) throw std::invalid_argument(spec);
      return StopRule::Threshold(t);
    } catch (const std::exception &) {
      throw Error(ErrorCode::kParse, "bad stop spec '" + spec + "'");
    }
  }
  if (spec.rfind("num:", 0) == 0) {
    try {
      size_t pos = 0;
      int k = std::stoi(spec.substr(4), &pos);
      if (pos != spec.size() - 4) throw std::invalid_argument(spec);
      return StopRule::NumSpeakers(k);
    } catch (const std::exception &) {
      throw Error(ErrorCode::kParse, "bad stop spec '" + spec + "'");
    }
  }
  throw Error(ErrorCode::kParse,
              "stop spec must be thresh:<t> or num:<k>, got '" + spec + "'");
}

}  // namespace

extern "C" {

const char *diarkit_last_error(void) { return t_last_error.c_str(); }

void diarkit_string_free(char *s) { std::free(s); }
void diarkit_doubles_free(double *p) { std::free(p); }

diarkit_status diarkit_plda_load(const char *path, diarkit_plda **out) {
  return Wrap([&] {
    RequireArg(path != nullptr && out != nullptr, "null argument");
    *out = new diarkit_plda{LoadPlda(path)};
  });
}

diarkit_status diarkit_plda_save(const diarkit_plda *model,
                                 const char *path) {
  return Wrap([&] {
    RequireArg(model != nullptr && path != nullptr, "null argument");
    SavePlda(model->model, path);
  });
}

void diarkit_plda_free(diarkit_plda *model) { delete model; }

int diarkit_plda_dim(const diarkit_plda *model) {
  return model == nullptr ? 0 : model->model.dim();
}

diarkit_status diarkit_plda_score_pair(const diarkit_plda *model,
                                       const double *a, const double *b,
                                       size_t dim, int length_normalize,
                                       double *out_llr) {
  return Wrap([&] {
    RequireArg(model != nullptr && out_llr != nullptr, "null argument");
    RequireArg(static_cast<int>(dim) == model->model.dim(),
               "dimension mismatch");
    *out_llr = LogLrSingle(model->model, ToEmbedding(a, dim),
                           ToEmbedding(b, dim), length_normalize != 0);
  });
}

diarkit_status diarkit_mixture_load(const char *path,
                                    diarkit_mixture **out) {
  return Wrap([&] {
    RequireArg(path != nullptr && out != nullptr, "null argument");
    *out = new diarkit_mixture{LoadMixture(path)};
  });
}

diarkit_status diarkit_mixture_save(const diarkit_mixture *model,
                                    const char *path) {
  return Wrap([&] {
    RequireArg(model != nullptr && path != nullptr, "null argument");
    SaveMixture(model->model, path);
  });
}

void diarkit_mixture_free(diarkit_mixture *model) { delete model; }

int diarkit_mixture_dim(const diarkit_mixture *model) {
  return model == nullptr ? 0 : model->model.dim();
}

diarkit_status diarkit_mixture_score_pair(const diarkit_mixture *model,
                                          const char *prior_spec,
                                          const double *a, const double *b,
                                          size_t dim, int length_normalize,
                                          double *out_llr) {
  return Wrap([&] {
    RequireArg(model != nullptr && out_llr != nullptr, "null argument");
    RequireArg(static_cast<int>(dim) == model->model.dim(),
               "dimension mismatch");
    SpeakerTypePrior prior = prior_spec == nullptr
                                 ? model->model.default_prior()
                                 : ParsePrior(prior_spec);
    *out_llr =
        LogLrMixtureShared(model->model, prior, ToEmbedding(a, dim),
                           ToEmbedding(b, dim), length_normalize != 0);
  });
}

diarkit_status diarkit_score_pair_file(const char *model_path,
                                       int is_mixture,
                                       const char *prior_spec,
                                       const char *embeddings_path, size_t i,
                                       size_t j, int length_normalize,
                                       double *out_llr) {
  return Wrap([&] {
    RequireArg(model_path != nullptr && embeddings_path != nullptr &&
                   out_llr != nullptr,
               "null argument");
    EmbeddingFile file = ReadEmbeddingFile(embeddings_path);
    RequireArg(i < file.records.size() && j < file.records.size(),
               "record index out of range");
    const Embedding &a = file.records[i].values;
    const Embedding &b = file.records[j].values;
    if (is_mixture) {
      MixturePlda mix = LoadMixture(model_path);
      SpeakerTypePrior prior = prior_spec == nullptr
                                   ? mix.default_prior()
                                   : ParsePrior(prior_spec);
      *out_llr = LogLrMixtureShared(mix, prior, a, b,
                                    length_normalize != 0);
    } else {
      PldaModel model = LoadPlda(model_path);
      *out_llr = LogLrSingle(model, a, b, length_normalize != 0);
    }
  });
}

diarkit_status diarkit_train_plda(const char *embeddings_path,
                                  const char *labels_path, int iterations,
                                  int length_normalize,
                                  const char *model_out_path,
                                  double **out_loglik, size_t *out_len) {
  return Wrap([&] {
    RequireArg(model_out_path != nullptr, "null output path");
    LabeledEmbeddingSet data =
        LoadTrainingData(embeddings_path, labels_path, length_normalize);
    PldaTrainResult result = TrainPlda(data, iterations);
    SavePlda(result.model, model_out_path);
    CopyLoglik(result.loglik, out_loglik, out_len);
  });
}

diarkit_status diarkit_train_mixture(const char *embeddings_path,
                                     const char *labels_path, int iterations,
                                     int length_normalize,
                                     const char *prior_spec,
                                     const char *model_out_path,
                                     double **out_loglik, size_t *out_len) {
  return Wrap([&] {
    RequireArg(model_out_path != nullptr, "null output path");
    LabeledEmbeddingSet data =
        LoadTrainingData(embeddings_path, labels_path, length_normalize);
    SpeakerTypePrior prior =
        prior_spec == nullptr ? UniformPrior() : ParsePrior(prior_spec);
    std::vector<double> loglik;
    std::array<PldaModel, kNumSpeakerTypes> parts;
    for (SpeakerType t : kAllSpeakerTypes) {
      PldaTrainResult result =
          TrainPlda(FilterByType(data, t), iterations);
      parts[static_cast<int>(t)] = std::move(result.model);
      loglik.insert(loglik.end(), result.loglik.begin(),
                    result.loglik.end());
    }
    MixturePlda mix(std::move(parts[0]), std::move(parts[1]),
                    std::move(parts[2]), prior);
    SaveMixture(mix, model_out_path);
    CopyLoglik(loglik, out_loglik, out_len);
  });
}

namespace {

struct RecordingTask {
  std::string recording;
  std::vector<Segment> segments;
  std::vector<Embedding> embeddings;
};

// Per-recording work shared by the serial and threaded paths.
struct DiarizeJob {
  const diarkit_diarize_options *opt;
  const PldaModel *single;
  const MixturePlda *mixture;
  const std::vector<TypedInterval> *type_labels;
  const std::map<std::string, FramePosteriorSequence> *posteriors;
  const SpeakerTypePrior *shared_prior;
  StopRule stop;
  bool normalize;

  DiarizationHypothesis Run(const RecordingTask &task) const {
    std::string mode = opt->mode;
    if (mode == "single") {
      return DiarizeSingle(*single, task.segments, task.embeddings, stop,
                           normalize);
    }
    if (mode == "oracle") {
      double t = stop.threshold;
      return DiarizeOracleSplit(*mixture, *type_labels, task.segments,
                                task.embeddings, {t, t, t}, normalize);
    }
    if (posteriors != nullptr) {
      const FramePosteriorSequence &seq =
          FindPosteriors(*posteriors, task.recording);
      return DiarizeMixture(*mixture,
                            SegmentPriorsFromPosteriors(seq, task.segments),
                            task.segments, task.embeddings, stop, normalize);
    }
    return DiarizeMixture(*mixture, *shared_prior, task.segments,
                          task.embeddings, stop, normalize);
  }
};

}  // namespace

diarkit_status diarkit_diarize(const diarkit_diarize_options *options,
                               int *out_segments, int *out_clusters) {
  return Wrap([&] {
    RequireArg(options != nullptr, "null options");
    RequireArg(options->mode != nullptr, "null mode");
    RequireArg(options->model_path != nullptr, "null model path");
    RequireArg(options->embeddings_path != nullptr, "null embeddings path");
    RequireArg(options->sad_path != nullptr, "null sad path");
    RequireArg(options->rttm_out_path != nullptr, "null output path");
    std::string mode = options->mode;
    RequireArg(mode == "single" || mode == "mixture" || mode == "oracle",
               "mode must be single, mixture or oracle");

    PldaModel single;
    MixturePlda *mixture = nullptr;
    std::unique_ptr<MixturePlda> mixture_owner;
    if (mode == "single") {
      single = LoadPlda(options->model_path);
    } else {
      mixture_owner =
          std::make_unique<MixturePlda>(LoadMixture(options->model_path));
      mixture = mixture_owner.get();
    }

    StopRule stop = StopRule::Threshold(mode == "single" ? -0.2 : 0.0);
    if (options->stop_spec != nullptr) stop = ParseStop(options->stop_spec);
    if (mode == "oracle" && stop.kind != StopRule::Kind::kThreshold) {
      throw Error(ErrorCode::kInvalidArgument,
                  "oracle mode needs a threshold stop rule");
    }

    std::vector<TypedInterval> type_labels;
    if (mode == "oracle") {
      if (options->type_labels_path == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "oracle mode needs type labels");
      }
      type_labels = ReadTypeLabels(options->type_labels_path);
    }

    std::map<std::string, FramePosteriorSequence> posteriors;
    bool have_posteriors = false;
    SpeakerTypePrior shared_prior = UniformPrior();
    if (mode == "mixture") {
      if (options->posteriors_path != nullptr) {
        posteriors = ReadPosteriorFile(options->posteriors_path);
        have_posteriors = true;
      } else if (options->prior_spec != nullptr) {
        shared_prior = ParsePrior(options->prior_spec);
      } else {
        shared_prior = mixture->default_prior();
      }
    }

    // Segments are the embedding records, grouped per recording in time
    // order; SAD supplies the extents they must respect.
    EmbeddingFile file = ReadEmbeddingFile(options->embeddings_path);
    std::vector<Interval> sad = ReadSadFile(options->sad_path);
    std::map<std::string, RecordingTask> tasks;
    for (const auto &rec : file.records) {
      RecordingTask &task = tasks[rec.recording];
      task.recording = rec.recording;
      task.segments.push_back({rec.recording, rec.onset, rec.offset, 0});
      task.embeddings.push_back(rec.values);
    }
    if (tasks.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no embeddings to diarize");
    }
    for (auto &[name, task] : tasks) {
      std::vector<size_t> order(task.segments.size());
      for (size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(),
                       [&task](size_t a, size_t b) {
                         const Segment &sa = task.segments[a];
                         const Segment &sb = task.segments[b];
                         return sa.onset < sb.onset ||
                                (sa.onset == sb.onset &&
                                 sa.offset < sb.offset);
                       });
      std::vector<Segment> segments;
      std::vector<Embedding> embeddings;
      for (size_t k = 0; k < order.size(); ++k) {
        Segment s = task.segments[order[k]];
        s.index = static_cast<int>(k);
        segments.push_back(std::move(s));
        embeddings.push_back(std::move(task.embeddings[order[k]]));
      }
      task.segments = std::move(segments);
      task.embeddings = std::move(embeddings);
      for (const Segment &s : task.segments) {
        bool inside = false;
        for (const Interval &r : sad) {
          if (r.recording == name && s.onset >= r.onset - 1e-6 &&
              s.offset <= r.offset + 1e-6) {
            inside = true;
            break;
          }
        }
        if (!inside) {
          throw Error(ErrorCode::kInvalidArgument,
                      "segment outside speech regions in '" + name + "'");
        }
      }
    }

    DiarizeJob job{options,
                   &single,
                   mixture,
                   &type_labels,
                   have_posteriors ? &posteriors : nullptr,
                   &shared_prior,
                   stop,
                   options->length_normalize != 0};

    std::vector<const RecordingTask *> task_list;
    for (const auto &[name, task] : tasks) task_list.push_back(&task);
    std::vector<DiarizationHypothesis> results(task_list.size());

    const int jobs = std::max(1, options->jobs);
    if (jobs <= 1 || task_list.size() <= 1) {
      for (size_t k = 0; k < task_list.size(); ++k) {
        results[k] = job.Run(*task_list[k]);
      }
    } else {
      std::atomic<size_t> next{0};
      std::mutex error_mutex;
      std::exception_ptr first_error;
      auto worker = [&] {
        for (;;) {
          size_t k = next.fetch_add(1);
          if (k >= task_list.size()) return;
          try {
            results[k] = job.Run(*task_list[k]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      };
      std::vector<std::thread> pool;
      int n_threads = std::min<int>(jobs, static_cast<int>(task_list.size()));
      pool.reserve(static_cast<size_t>(n_threads));
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (auto &t : pool) t.join();
      if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<Turn> all_turns;
    int total_segments = 0, total_clusters = 0;
    for (const auto &hyp : results) {
      all_turns.insert(all_turns.end(), hyp.turns.begin(), hyp.turns.end());
      total_segments += static_cast<int>(hyp.labels.size());
      int clusters = 0;
      for (int l : hyp.labels) clusters = std::max(clusters, l + 1);
      total_clusters += clusters;
    }
    WriteRttm(std::move(all_turns), options->rttm_out_path);
    if (out_segments != nullptr) *out_segments = total_segments;
    if (out_clusters != nullptr) *out_clusters = total_clusters;
  });
}

diarkit_status diarkit_der(const char *reference_rttm,
                           const char *hypothesis_rttm, double collar,
                           int score_overlap, diarkit_der_report *out) {
  return Wrap([&] {
    RequireArg(reference_rttm != nullptr && hypothesis_rttm != nullptr &&
                   out != nullptr,
               "null argument");
    DerOptions options;
    options.collar = collar;
    options.score_overlap = score_overlap != 0;
    DerReport report = ComputeDer(ReadRttm(reference_rttm),
                                  ReadRttm(hypothesis_rttm), options);
    out->fa = report.false_alarm;
    out->miss = report.miss;
    out->sm = report.speaker_mismatch;
    out->total = report.total_scored;
    out->der = report.der();
  });
}

namespace {

CorpusSpec SpecFromConfig(const std::map<std::string, std::string> &kv,
                          std::uint64_t seed) {
  CorpusSpec spec = DefaultCorpusSpec(
      KvInt(kv, "dim", 16),
      {KvInt(kv, "speakers_m", 10), KvInt(kv, "speakers_f", 10),
       KvInt(kv, "speakers_c", 10)},
      KvDouble(kv, "separation", 2.0), seed);
  double within_scale = KvDouble(kv, "within_scale", 1.0);
  for (auto &t : spec.types) t.within_var *= within_scale;
  spec.min_embeddings_per_speaker = KvInt(kv, "embeddings_min", 8);
  spec.max_embeddings_per_speaker =
      KvInt(kv, "embeddings_max", spec.min_embeddings_per_speaker);
  return spec;
}

void WriteEmb(const EmbeddingFile &file, const std::string &format,
              const std::string &path) {
  if (format == "binary") {
    WriteEmbeddingFileBinary(file, path);
  } else if (format == "text") {
    WriteEmbeddingFileText(file, path);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "format must be text or binary");
  }
}

void SimulateCorpus(const std::map<std::string, std::string> &kv,
                    const std::string &prefix) {
  CorpusSpec spec = SpecFromConfig(kv, KvSeed(kv, "seed", 0));
  LabeledEmbeddingSet data = GenerateTrainingCorpus(spec);
  EmbeddingFile file;
  file.dim = spec.dim;
  SpeakerLabels labels;
  std::map<std::string, int> counter;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    const std::string &spk = data.speaker_ids[i];
    int k = counter[spk]++;
    file.records.push_back({spk, static_cast<double>(k),
                            static_cast<double>(k + 1),
                            data.embeddings[i]});
    labels.key_to_speaker[spk] = spk;
  }
  labels.speaker_types = data.speaker_types;
  WriteEmb(file, KvString(kv, "format", "text"), prefix + ".emb");
  WriteSpeakerLabels(labels, prefix + ".labels");
}

void SimulateConversations(const std::map<std::string, std::string> &kv,
                           const std::string &prefix) {
  const std::uint64_t seed = KvSeed(kv, "seed", 0);
  CorpusSpec bank_spec = SpecFromConfig(kv, DeriveSeed(seed, 1));
  SpeakerBank bank = GenerateSpeakerBank(bank_spec);
  const int conversations = KvInt(kv, "conversations", 1);
  RequireArg(conversations >= 1, "conversations must be >= 1");
  std::array<int, kNumSpeakerTypes> want = {KvInt(kv, "participants_m", 1),
                                            KvInt(kv, "participants_f", 1),
                                            KvInt(kv, "participants_c", 1)};

  EmbeddingFile emb;
  emb.dim = bank_spec.dim;
  std::vector<Interval> sad;
  std::vector<TypedInterval> types;
  std::vector<Turn> reference;
  std::map<std::string, FramePosteriorSequence> posteriors;
  const double post_rate = KvDouble(kv, "posterior_rate", 0.0);
  const double post_noise = KvDouble(kv, "posterior_noise", 0.1);

  // Type blocks of the bank are contiguous, M then F then C.
  std::array<int, kNumSpeakerTypes> block_start{};
  for (int g = 1; g < kNumSpeakerTypes; ++g) {
    block_start[g] =
        block_start[g - 1] + bank_spec.speakers_per_type[g - 1];
  }

  for (int c = 0; c < conversations; ++c) {
    ConversationSpec conv_spec;
    conv_spec.recording = "rec" + std::to_string(c);
    conv_spec.duration = KvDouble(kv, "duration", 60.0);
    conv_spec.mean_turn = KvDouble(kv, "mean_turn", 3.0);
    conv_spec.min_turn = KvDouble(kv, "min_turn", 1.5);
    conv_spec.overlap_fraction = KvDouble(kv, "overlap_fraction", 0.1);
    conv_spec.gap_probability = KvDouble(kv, "gap_probability", 0.25);
    conv_spec.mean_gap = KvDouble(kv, "mean_gap", 0.75);
    conv_spec.window = KvDouble(kv, "window", 1.5);
    conv_spec.hop = KvDouble(kv, "hop", 0.75);
    conv_spec.seed = DeriveSeed(seed, 200 + static_cast<std::uint64_t>(c));
    // Participants: a without-replacement pick per type block.
    CounterRng pick(DeriveSeed(seed, 100 + static_cast<std::uint64_t>(c)),
                    0);
    for (int g = 0; g < kNumSpeakerTypes; ++g) {
      int have = bank_spec.speakers_per_type[g];
      RequireArg(want[g] >= 0 && want[g] <= have,
                 "participants exceed bank speakers");
      std::vector<int> ids(static_cast<size_t>(have));
      for (int k = 0; k < have; ++k) ids[k] = block_start[g] + k;
      for (int k = 0; k < want[g]; ++k) {
        std::uint64_t j = static_cast<std::uint64_t>(k) +
                          pick.UniformInt(static_cast<std::uint64_t>(
                              have - k));
        std::swap(ids[k], ids[j]);
        conv_spec.participants.push_back(ids[k]);
      }
    }
    Conversation conv = GenerateConversation(bank, conv_spec);
    for (size_t s = 0; s < conv.segments.size(); ++s) {
      emb.records.push_back({conv_spec.recording, conv.segments[s].onset,
                             conv.segments[s].offset, conv.embeddings[s]});
    }
    sad.insert(sad.end(), conv.sad.begin(), conv.sad.end());
    types.insert(types.end(), conv.type_labels.begin(),
                 conv.type_labels.end());
    reference.insert(reference.end(), conv.reference.begin(),
                     conv.reference.end());
    if (post_rate > 0.0) {
      posteriors[conv_spec.recording] = MakePosteriors(
          conv.type_labels, conv_spec.duration, post_rate, post_noise);
    }
  }
  WriteEmb(emb, KvString(kv, "format", "text"), prefix + ".emb");
  WriteSadFile(sad, prefix + ".sad");
  WriteTypeLabels(types, prefix + ".types");
  WriteRttm(std::move(reference), prefix + ".rttm");
  if (post_rate > 0.0) WritePosteriorFile(posteriors, prefix + ".post");
}

}  // namespace

diarkit_status diarkit_simulate(const char *config_path,
                                const char *out_prefix) {
  return Wrap([&] {
    RequireArg(config_path != nullptr && out_prefix != nullptr,
               "null argument");
    auto kv = ReadKvConfig(config_path);
    std::string kind = KvString(kv, "kind", "corpus");
    if (kind == "corpus") {
      SimulateCorpus(kv, out_prefix);
    } else if (kind == "conversations") {
      SimulateConversations(kv, out_prefix);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "kind must be corpus or conversations");
    }
  });
}

diarkit_status diarkit_experiment(const char *suite, const char *config_path,
                                  char **out_table) {
  return Wrap([&] {
    RequireArg(suite != nullptr && out_table != nullptr, "null argument");
    std::map<std::string, std::string> kv;
    if (config_path != nullptr) kv = ReadKvConfig(config_path);
    *out_table = CopyString(
        FormatExperimentTable(RunExperimentSuite(suite, kv)));
  });
}

}  // extern "C"
