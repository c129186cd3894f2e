// tests/test_capi.cc: the shared-library C surface, exercised the way an
// external binding would use it.

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diarkit/diarkit.h"
#include "support/test_util.h"

using diarkit::testutil::Slurp;
using diarkit::testutil::Spit;
using diarkit::testutil::TempDir;

namespace {

void Require(diarkit_status st) {
  if (st != DIARKIT_OK) {
    throw std::runtime_error(std::string("diarkit call failed: ") +
                             diarkit_last_error());
  }
}

// One text-format embedding record.
struct EmbRecord {
  std::string recording;
  std::vector<double> values;
};

std::vector<EmbRecord> ParseEmbText(const std::string &path) {
  std::istringstream is(Slurp(path));
  std::string line;
  std::getline(is, line);  // "#emb v1 dim=<d>" header
  std::vector<EmbRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    EmbRecord rec;
    double onset, offset, v;
    row >> rec.recording >> onset >> offset;
    while (row >> v) rec.values.push_back(v);
    records.push_back(std::move(rec));
  }
  return records;
}

// Training corpus, trained models, and simulated conversations shared by
// every test case; built once through the C API itself.
struct Artifacts {
  TempDir tmp{"capi"};
  std::string emb, labels, plda_path, mix_path;
  std::string conv_prefix;
  std::vector<double> single_trace, mixture_trace;
};

Artifacts &GetArtifacts() {
  static Artifacts a;
  static bool once = [] {
    std::string corpus_cfg = a.tmp.Path("corpus.cfg");
    Spit(corpus_cfg,
         "kind = corpus\n"
         "dim = 6\n"
         "seed = 11\n"
         "speakers_m = 6\nspeakers_f = 6\nspeakers_c = 6\n"
         "separation = 3.0\n"
         "embeddings_min = 6\n");
    std::string corpus_prefix = a.tmp.Path("train");
    Require(diarkit_simulate(corpus_cfg.c_str(), corpus_prefix.c_str()));
    a.emb = corpus_prefix + ".emb";
    a.labels = corpus_prefix + ".labels";

    a.plda_path = a.tmp.Path("model.plda");
    double *trace = nullptr;
    size_t len = 0;
    Require(diarkit_train_plda(a.emb.c_str(), a.labels.c_str(), 4, 0,
                               a.plda_path.c_str(), &trace, &len));
    a.single_trace.assign(trace, trace + len);
    diarkit_doubles_free(trace);

    a.mix_path = a.tmp.Path("model.mplda");
    trace = nullptr;
    len = 0;
    Require(diarkit_train_mixture(a.emb.c_str(), a.labels.c_str(), 3, 0,
                                  "paper", a.mix_path.c_str(), &trace,
                                  &len));
    a.mixture_trace.assign(trace, trace + len);
    diarkit_doubles_free(trace);

    std::string conv_cfg = a.tmp.Path("conv.cfg");
    Spit(conv_cfg,
         "kind = conversations\n"
         "dim = 6\n"
         "seed = 21\n"
         "conversations = 2\n"
         "participants_m = 1\nparticipants_f = 1\nparticipants_c = 1\n"
         "separation = 3.0\n"
         "duration = 40\n"
         "posterior_rate = 10\n");
    a.conv_prefix = a.tmp.Path("conv");
    Require(diarkit_simulate(conv_cfg.c_str(), a.conv_prefix.c_str()));
    return true;
  }();
  (void)once;
  return a;
}

}  // namespace

TEST_CASE("null and missing inputs produce typed status codes") {
  diarkit_plda *model = nullptr;
  CHECK(diarkit_plda_load(nullptr, &model) == DIARKIT_INVALID_ARGUMENT);
  CHECK(std::string(diarkit_last_error()).size() > 0);
  CHECK(diarkit_plda_load("x", nullptr) == DIARKIT_INVALID_ARGUMENT);

  TempDir tmp("capi_err");
  CHECK(diarkit_plda_load(tmp.Path("absent.plda").c_str(), &model) ==
        DIARKIT_NOT_FOUND);
  CHECK(std::string(diarkit_last_error()).find("cannot open") !=
        std::string::npos);

  std::string corrupt = tmp.Path("corrupt.plda");
  Spit(corrupt, "this is not a model file");
  CHECK(diarkit_plda_load(corrupt.c_str(), &model) == DIARKIT_PARSE_ERROR);
  diarkit_mixture *mix = nullptr;
  CHECK(diarkit_mixture_load(corrupt.c_str(), &mix) == DIARKIT_PARSE_ERROR);

  diarkit_der_report report;
  CHECK(diarkit_der(nullptr, "x", 0.0, 1, &report) ==
        DIARKIT_INVALID_ARGUMENT);
  CHECK(diarkit_der("a", "b", 0.0, 1, nullptr) == DIARKIT_INVALID_ARGUMENT);

  char *table = nullptr;
  CHECK(diarkit_experiment("no-such-suite", nullptr, &table) ==
        DIARKIT_INVALID_ARGUMENT);
  std::string msg = diarkit_last_error();
  CHECK(msg.find("unknown suite") != std::string::npos);
  CHECK(msg.find("oracle-vs-baseline") != std::string::npos);
}

TEST_CASE("training writes models and a non-decreasing objective trace") {
  const Artifacts &a = GetArtifacts();
  REQUIRE(a.single_trace.size() == 5);  // init + 4 iterations
  for (size_t i = 1; i < a.single_trace.size(); ++i) {
    CHECK(a.single_trace[i] >=
          a.single_trace[i - 1] - 1e-8 * std::fabs(a.single_trace[i - 1]));
  }
  // Three per-type blocks, each init + 3 iterations.
  REQUIRE(a.mixture_trace.size() == 12);
  for (int block = 0; block < 3; ++block) {
    for (int k = 1; k < 4; ++k) {
      double prev = a.mixture_trace[block * 4 + k - 1];
      double cur = a.mixture_trace[block * 4 + k];
      CHECK(cur >= prev - 1e-8 * std::fabs(prev));
    }
  }
  CHECK(Slurp(a.plda_path).substr(0, 4) == "PLDA");
  CHECK(Slurp(a.mix_path).substr(0, 4) == "MPLD");
}

TEST_CASE("models load and score pairs through every entry point") {
  const Artifacts &a = GetArtifacts();
  diarkit_plda *plda = nullptr;
  Require(diarkit_plda_load(a.plda_path.c_str(), &plda));
  CHECK(diarkit_plda_dim(plda) == 6);
  diarkit_mixture *mix = nullptr;
  Require(diarkit_mixture_load(a.mix_path.c_str(), &mix));
  CHECK(diarkit_mixture_dim(mix) == 6);

  std::vector<EmbRecord> records = ParseEmbText(a.emb);
  REQUIRE(records.size() == 6u * 6u * 3u);
  // Six consecutive records per speaker: 0 and 1 share M0, record 36 is F0.
  REQUIRE(records[0].recording == records[1].recording);
  REQUIRE(records[0].recording != records[36].recording);

  double same = 0.0, diff = 0.0, swapped = 0.0;
  Require(diarkit_plda_score_pair(plda, records[0].values.data(),
                                  records[1].values.data(), 6, 0, &same));
  Require(diarkit_plda_score_pair(plda, records[1].values.data(),
                                  records[0].values.data(), 6, 0, &swapped));
  Require(diarkit_plda_score_pair(plda, records[0].values.data(),
                                  records[36].values.data(), 6, 0, &diff));
  CHECK(same == swapped);
  CHECK(same > diff);

  double from_file = 0.0;
  Require(diarkit_score_pair_file(a.plda_path.c_str(), 0, nullptr,
                                  a.emb.c_str(), 0, 1, 0, &from_file));
  CHECK(from_file == same);

  // NULL prior selects the stored default, here "paper".
  double by_default = 0.0, by_name = 0.0, uniform = 0.0;
  Require(diarkit_mixture_score_pair(mix, nullptr, records[0].values.data(),
                                     records[1].values.data(), 6, 0,
                                     &by_default));
  Require(diarkit_mixture_score_pair(mix, "paper", records[0].values.data(),
                                     records[1].values.data(), 6, 0,
                                     &by_name));
  Require(diarkit_mixture_score_pair(mix, "uniform",
                                     records[0].values.data(),
                                     records[1].values.data(), 6, 0,
                                     &uniform));
  CHECK(by_default == by_name);
  CHECK(by_default != uniform);
  double mix_from_file = 0.0;
  Require(diarkit_score_pair_file(a.mix_path.c_str(), 1, "paper",
                                  a.emb.c_str(), 0, 1, 0, &mix_from_file));
  CHECK(mix_from_file == by_name);

  double out = 0.0;
  CHECK(diarkit_plda_score_pair(plda, records[0].values.data(),
                                records[1].values.data(), 5, 0, &out) ==
        DIARKIT_INVALID_ARGUMENT);
  CHECK(diarkit_mixture_score_pair(mix, "oracle:Q", records[0].values.data(),
                                   records[1].values.data(), 6, 0, &out) ==
        DIARKIT_PARSE_ERROR);
  CHECK(diarkit_score_pair_file(a.emb.c_str(), 0, nullptr, a.emb.c_str(),
                                0, 1, 0, &out) ==
        DIARKIT_PARSE_ERROR);  // embeddings file is no model file
  CHECK(diarkit_score_pair_file(a.plda_path.c_str(), 0, nullptr,
                                a.emb.c_str(), 0, 9999, 0, &out) ==
        DIARKIT_INVALID_ARGUMENT);  // record index out of range

  diarkit_plda_free(plda);
  diarkit_mixture_free(mix);
}

TEST_CASE("diarize runs every mode deterministically") {
  const Artifacts &a = GetArtifacts();
  TempDir tmp("capi_diar");
  std::string emb = a.conv_prefix + ".emb";
  std::string sad = a.conv_prefix + ".sad";
  std::string types = a.conv_prefix + ".types";
  std::string post = a.conv_prefix + ".post";
  std::string s1 = tmp.Path("s1.rttm"), s2 = tmp.Path("s2.rttm");
  std::string s4 = tmp.Path("s4.rttm"), sk = tmp.Path("k.rttm");
  std::string m1 = tmp.Path("m.rttm"), mp = tmp.Path("mp.rttm");
  std::string o1 = tmp.Path("o.rttm"), x = tmp.Path("x.rttm");
  std::string missing_sad = tmp.Path("missing.sad");

  diarkit_diarize_options opt{};
  opt.mode = "single";
  opt.model_path = a.plda_path.c_str();
  opt.embeddings_path = emb.c_str();
  opt.sad_path = sad.c_str();
  opt.jobs = 1;
  opt.rttm_out_path = s1.c_str();
  int segments = 0, clusters = 0;
  Require(diarkit_diarize(&opt, &segments, &clusters));
  CHECK(segments > 0);
  CHECK(clusters >= 1);
  std::string first = Slurp(s1);
  CHECK(first.substr(0, 8) == "SPEAKER ");

  opt.rttm_out_path = s2.c_str();
  Require(diarkit_diarize(&opt, nullptr, nullptr));
  CHECK(Slurp(s2) == first);

  opt.rttm_out_path = s4.c_str();
  opt.jobs = 4;
  Require(diarkit_diarize(&opt, nullptr, nullptr));
  CHECK(Slurp(s4) == first);

  // Exactly three clusters per recording under a speaker-count stop.
  opt.rttm_out_path = sk.c_str();
  opt.jobs = 1;
  opt.stop_spec = "num:3";
  Require(diarkit_diarize(&opt, &segments, &clusters));
  CHECK(clusters == 6);  // two recordings
  opt.stop_spec = nullptr;

  // Mixture mode with a shared prior, then with per-segment posteriors.
  diarkit_diarize_options mopt{};
  mopt.mode = "mixture";
  mopt.model_path = a.mix_path.c_str();
  mopt.embeddings_path = emb.c_str();
  mopt.sad_path = sad.c_str();
  mopt.jobs = 1;
  mopt.prior_spec = "uniform";
  mopt.rttm_out_path = m1.c_str();
  Require(diarkit_diarize(&mopt, &segments, &clusters));
  CHECK(Slurp(m1).substr(0, 8) == "SPEAKER ");
  mopt.prior_spec = nullptr;
  mopt.posteriors_path = post.c_str();
  mopt.rttm_out_path = mp.c_str();
  Require(diarkit_diarize(&mopt, &segments, &clusters));
  CHECK(!Slurp(mp).empty());

  diarkit_diarize_options oopt{};
  oopt.mode = "oracle";
  oopt.model_path = a.mix_path.c_str();
  oopt.embeddings_path = emb.c_str();
  oopt.sad_path = sad.c_str();
  oopt.jobs = 1;
  oopt.type_labels_path = types.c_str();
  oopt.rttm_out_path = o1.c_str();
  Require(diarkit_diarize(&oopt, &segments, &clusters));
  CHECK(!Slurp(o1).empty());

  // Mode, stop and input validation.
  diarkit_diarize_options bad = opt;
  bad.mode = "banana";
  bad.rttm_out_path = x.c_str();
  CHECK(diarkit_diarize(&bad, nullptr, nullptr) == DIARKIT_INVALID_ARGUMENT);
  bad = opt;
  bad.stop_spec = "banana";
  bad.rttm_out_path = x.c_str();
  CHECK(diarkit_diarize(&bad, nullptr, nullptr) == DIARKIT_PARSE_ERROR);
  bad = opt;
  bad.sad_path = missing_sad.c_str();
  bad.rttm_out_path = x.c_str();
  CHECK(diarkit_diarize(&bad, nullptr, nullptr) == DIARKIT_NOT_FOUND);
  bad = oopt;
  bad.type_labels_path = nullptr;  // oracle mode needs type labels
  bad.rttm_out_path = x.c_str();
  CHECK(diarkit_diarize(&bad, nullptr, nullptr) == DIARKIT_INVALID_ARGUMENT);
}

TEST_CASE("der reports satisfy self-scoring identities") {
  const Artifacts &a = GetArtifacts();
  std::string reference = a.conv_prefix + ".rttm";
  diarkit_der_report report{};
  Require(diarkit_der(reference.c_str(), reference.c_str(), 0.0, 1,
                      &report));
  CHECK(report.fa == 0.0);
  CHECK(report.miss == 0.0);
  CHECK(report.sm == 0.0);
  CHECK(report.total > 0.0);
  CHECK(report.der == 0.0);

  TempDir tmp("capi_der");
  std::string ref = tmp.Path("ref.rttm");
  Spit(ref, "SPEAKER r 1 0.00 10.00 <NA> <NA> a <NA> <NA>\n");
  std::string renamed = tmp.Path("renamed.rttm");
  Spit(renamed, "SPEAKER r 1 0.00 10.00 <NA> <NA> b <NA> <NA>\n");
  Require(diarkit_der(ref.c_str(), renamed.c_str(), 0.0, 1, &report));
  CHECK(report.der == 0.0);
  CHECK(report.total == 10.0);

  std::string empty = tmp.Path("empty.rttm");
  Spit(empty, "");
  Require(diarkit_der(ref.c_str(), empty.c_str(), 0.0, 1, &report));
  CHECK(report.miss == 10.0);
  CHECK(report.der == 1.0);

  CHECK(diarkit_der(ref.c_str(), tmp.Path("absent.rttm").c_str(), 0.0, 1,
                    &report) == DIARKIT_NOT_FOUND);
}

TEST_CASE("experiment tables are deterministic tsv") {
  const Artifacts &a = GetArtifacts();
  std::string cfg = a.tmp.Path("exp.cfg");
  Spit(cfg,
       "seeds = 2\n"
       "dim = 6\n"
       "train_speakers = 8\n"
       "iterations = 3\n"
       "duration = 30\n");
  char *table = nullptr;
  Require(diarkit_experiment("oracle-vs-baseline", cfg.c_str(), &table));
  REQUIRE(table != nullptr);
  std::string text = table;
  diarkit_string_free(table);
  CHECK(text.substr(0, 25) == "suite\tcondition\tseed\tder\n");
  CHECK(text.find("\tbaseline\t0\t") != std::string::npos);
  CHECK(text.find("\toracle\t1\t") != std::string::npos);
  CHECK(text.find("\tmedian\t") != std::string::npos);

  table = nullptr;
  Require(diarkit_experiment("oracle-vs-baseline", cfg.c_str(), &table));
  CHECK(text == std::string(table));
  diarkit_string_free(table);
}
