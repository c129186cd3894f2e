// tests/test_synth.cc: generators, RNG streams, balancing, conversations.

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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/rng.h"
#include "core/synth.h"

using namespace diarkit;

TEST_CASE("the counter rng is a pure function of seed, stream and index") {
  // Golden first words of the documented construction, computed by hand
  // from the mix64 recurrence.
  auto word = [](uint64_t seed, uint64_t stream, uint64_t i) {
    uint64_t gamma = 0x9E3779B97F4A7C15ULL;
    uint64_t key = CounterRng::Mix64(seed ^ (gamma * (stream + 1)));
    return CounterRng::Mix64(key + gamma * (i + 1));
  };
  for (uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL}) {
    for (uint64_t stream : {0ULL, 1ULL, 7ULL}) {
      CounterRng rng(seed, stream);
      for (uint64_t i = 0; i < 5; ++i) {
        CHECK(rng.NextWord() == word(seed, stream, i));
      }
    }
  }
  // Distinct streams decorrelate.
  CounterRng a(9, 0), b(9, 1);
  CHECK(a.NextWord() != b.NextWord());
  // Uniform lies in [0, 1).
  CounterRng u(10, 0);
  for (int i = 0; i < 1000; ++i) {
    double v = u.Uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("normal draws consume two words and have the right moments") {
  CounterRng rng(77, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double v = rng.Normal();
    sum += v;
    sq += v * v;
  }
  CHECK(std::fabs(sum / n) < 0.02);
  CHECK(std::fabs(sq / n - 1.0) < 0.03);

  CounterRng again(77, 0);
  again.Normal();
  // Word counter advanced by exactly two.
  CounterRng probe(77, 0);
  probe.NextWord();
  probe.NextWord();
  CHECK(again.NextWord() == probe.NextWord());
}

TEST_CASE("same seed generates bit-identical corpora") {
  CorpusSpec spec = DefaultCorpusSpec(8, {5, 4, 3}, 2.0, 99);
  LabeledEmbeddingSet a = GenerateTrainingCorpus(spec);
  LabeledEmbeddingSet b = GenerateTrainingCorpus(spec);
  REQUIRE(a.embeddings.size() == b.embeddings.size());
  for (size_t i = 0; i < a.embeddings.size(); ++i) {
    CHECK(a.speaker_ids[i] == b.speaker_ids[i]);
    CHECK((a.embeddings[i] - b.embeddings[i]).cwiseAbs().maxCoeff() == 0.0);
  }
  spec.seed = 100;
  LabeledEmbeddingSet c = GenerateTrainingCorpus(spec);
  CHECK((a.embeddings[0] - c.embeddings[0]).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("speaker ids carry type prefixes and types are recorded") {
  CorpusSpec spec = DefaultCorpusSpec(4, {2, 3, 1}, 2.0, 5);
  LabeledEmbeddingSet data = GenerateTrainingCorpus(spec);
  std::set<std::string> ids(data.speaker_ids.begin(), data.speaker_ids.end());
  CHECK(ids == std::set<std::string>{"M0", "M1", "F0", "F1", "F2", "C0"});
  CHECK(data.speaker_types.at("M1") == SpeakerType::kMale);
  CHECK(data.speaker_types.at("F2") == SpeakerType::kFemale);
  CHECK(data.speaker_types.at("C0") == SpeakerType::kChild);
}

TEST_CASE("vanishing within variance collapses a speaker's embeddings") {
  CorpusSpec spec = DefaultCorpusSpec(6, {4, 0, 0}, 2.0, 11);
  spec.types[0].within_var.setConstant(1e-8);
  LabeledEmbeddingSet data = GenerateTrainingCorpus(spec);
  std::map<std::string, Eigen::VectorXd> first;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    auto it = first.find(data.speaker_ids[i]);
    if (it == first.end()) {
      first.emplace(data.speaker_ids[i], data.embeddings[i]);
    } else {
      CHECK((data.embeddings[i] - it->second).cwiseAbs().maxCoeff() < 1e-3);
    }
  }
}

TEST_CASE("speaker mean scatter approaches the generating covariance") {
  const int dim = 3;
  CorpusSpec spec = DefaultCorpusSpec(dim, {1000, 0, 0}, 2.0, 13);
  spec.types[0].between_var << 2.0, 1.0, 0.5;
  SpeakerBank bank = GenerateSpeakerBank(spec);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto &s : bank.speakers) mean += s.mean;
  mean /= static_cast<double>(bank.speakers.size());
  Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
  for (const auto &s : bank.speakers) {
    var += (s.mean - mean).cwiseAbs2();
  }
  var /= static_cast<double>(bank.speakers.size() - 1);
  // Sample variance of 1000 draws has a relative spread near sqrt(2/999),
  // so 12% is a little over 2.5 sigma.
  for (int j = 0; j < dim; ++j) {
    CHECK(std::fabs(var[j] - spec.types[0].between_var[j]) /
              spec.types[0].between_var[j] <
          0.12);
  }
  // The offset shows up as the sample mean.
  CHECK((mean - spec.types[0].offset).norm() < 0.2);
}

TEST_CASE("type offsets honor the separation factor") {
  CorpusSpec spec = DefaultCorpusSpec(8, {1, 1, 1}, 2.5, 1);
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    for (int h = g + 1; h < kNumSpeakerTypes; ++h) {
      double d = (spec.types[g].offset - spec.types[h].offset).norm();
      // Unit per-dimension between variance: distance = separation.
      CHECK(d == doctest::Approx(2.5).epsilon(1e-9));
    }
  }
}

TEST_CASE("balance by type keeps exact per-type counts and all embeddings") {
  CorpusSpec spec = DefaultCorpusSpec(4, {20, 30, 15}, 2.0, 17);
  spec.min_embeddings_per_speaker = 2;
  spec.max_embeddings_per_speaker = 9;
  LabeledEmbeddingSet data = GenerateTrainingCorpus(spec);
  LabeledEmbeddingSet out = BalanceByType(data, 12, 55);

  std::map<SpeakerType, std::set<std::string>> by_type;
  std::map<std::string, int> counts_in, counts_out;
  for (const auto &id : data.speaker_ids) counts_in[id]++;
  for (size_t i = 0; i < out.speaker_ids.size(); ++i) {
    by_type[out.speaker_types.at(out.speaker_ids[i])].insert(
        out.speaker_ids[i]);
    counts_out[out.speaker_ids[i]]++;
  }
  REQUIRE(by_type.size() == 3);
  for (const auto &[t, ids] : by_type) CHECK(ids.size() == 12);
  // Selected speakers keep every embedding.
  for (const auto &[id, c] : counts_out) CHECK(c == counts_in.at(id));

  // Identity selection when the request equals availability.
  LabeledEmbeddingSet all = BalanceByType(data, 15, 55);
  std::set<std::string> child_ids;
  for (const auto &[id, t] : all.speaker_types) {
    if (t == SpeakerType::kChild) child_ids.insert(id);
  }
  CHECK(child_ids.size() == 15);

  // Distinct seeds give distinct selections on a wide pool.
  CorpusSpec wide = DefaultCorpusSpec(3, {2000, 0, 0}, 2.0, 18);
  wide.min_embeddings_per_speaker = wide.max_embeddings_per_speaker = 1;
  LabeledEmbeddingSet pool = GenerateTrainingCorpus(wide);
  auto sel1 = BalanceByType(pool, 50, 1);
  auto sel2 = BalanceByType(pool, 50, 2);
  std::set<std::string> s1(sel1.speaker_ids.begin(), sel1.speaker_ids.end());
  std::set<std::string> s2(sel2.speaker_ids.begin(), sel2.speaker_ids.end());
  CHECK(s1 != s2);

  // Short pools are an error naming the type.
  CHECK_THROWS_WITH_AS(BalanceByType(data, 16, 55),
                       doctest::Contains("type C has 15 speakers, need 16"),
                       Error);
}

TEST_CASE("one speaker and no overlap degenerate to one turn per region") {
  CorpusSpec spec = DefaultCorpusSpec(4, {1, 0, 0}, 2.0, 23);
  SpeakerBank bank = GenerateSpeakerBank(spec);
  ConversationSpec conv;
  conv.recording = "solo";
  conv.duration = 30.0;
  conv.participants = {0};
  conv.overlap_fraction = 0.0;
  conv.seed = 3;
  Conversation c = GenerateConversation(bank, conv);
  REQUIRE(!c.reference.empty());
  std::set<std::string> speakers;
  for (const auto &t : c.reference) speakers.insert(t.speaker);
  CHECK(speakers == std::set<std::string>{"M0"});
  // Same-speaker adjacent turns merge, so reference equals the SAD extent.
  REQUIRE(c.reference.size() == c.sad.size());
  for (size_t i = 0; i < c.sad.size(); ++i) {
    CHECK(c.reference[i].onset == doctest::Approx(c.sad[i].onset));
    CHECK(c.reference[i].offset == doctest::Approx(c.sad[i].offset));
  }
  // Labels cover SAD with the one type.
  for (const auto &l : c.type_labels) CHECK(l.type == SpeakerType::kMale);
}

TEST_CASE("conversations are deterministic and structurally consistent") {
  CorpusSpec spec = DefaultCorpusSpec(6, {2, 2, 2}, 2.0, 29);
  SpeakerBank bank = GenerateSpeakerBank(spec);
  ConversationSpec conv;
  conv.duration = 90.0;
  conv.participants = {0, 1, 2, 3, 4, 5};
  conv.overlap_fraction = 0.2;
  conv.seed = 31;
  Conversation a = GenerateConversation(bank, conv);
  Conversation b = GenerateConversation(bank, conv);
  REQUIRE(a.segments.size() == b.segments.size());
  for (size_t i = 0; i < a.segments.size(); ++i) {
    CHECK((a.embeddings[i] - b.embeddings[i]).cwiseAbs().maxCoeff() == 0.0);
  }

  // SAD regions are sorted and disjoint; segments lie inside them.
  for (size_t i = 1; i < a.sad.size(); ++i) {
    CHECK(a.sad[i].onset > a.sad[i - 1].offset);
  }
  for (const auto &s : a.segments) {
    bool inside = false;
    for (const auto &r : a.sad) {
      if (s.onset >= r.onset - 1e-9 && s.offset <= r.offset + 1e-9) {
        inside = true;
        break;
      }
    }
    CHECK(inside);
  }
  // Type labels tile the SAD regions exactly.
  double label_time = 0.0, sad_time = 0.0;
  for (const auto &l : a.type_labels) label_time += l.offset - l.onset;
  for (const auto &r : a.sad) sad_time += r.offset - r.onset;
  CHECK(label_time == doctest::Approx(sad_time).epsilon(1e-9));
  // Every reference turn lies within the recording.
  for (const auto &t : a.reference) {
    CHECK(t.onset >= 0.0);
    CHECK(t.offset > t.onset);
    CHECK(t.recording == "rec");
  }
  // At most two speakers talk at once.
  std::vector<std::pair<double, int>> events;
  for (const auto &t : a.reference) {
    events.push_back({t.onset, 1});
    events.push_back({t.offset, -1});
  }
  std::sort(events.begin(), events.end());
  int active = 0;
  for (const auto &[time, delta] : events) {
    active += delta;
    CHECK(active <= 2);
  }
}

TEST_CASE("measured overlap tracks the requested fraction") {
  CorpusSpec spec = DefaultCorpusSpec(4, {3, 3, 0}, 2.0, 37);
  SpeakerBank bank = GenerateSpeakerBank(spec);
  double measured = 0.0, speech = 0.0;
  for (int s = 0; s < 10; ++s) {
    ConversationSpec conv;
    conv.duration = 240.0;
    conv.participants = {0, 1, 2, 3, 4, 5};
    conv.overlap_fraction = 0.2;
    conv.gap_probability = 0.0;  // gaps would dilute the measurement
    conv.seed = 1000 + s;
    Conversation c = GenerateConversation(bank, conv);
    // Overlapped time = total turn time minus its union.
    double turn_time = 0.0, union_time = 0.0;
    for (const auto &t : c.reference) turn_time += t.offset - t.onset;
    for (const auto &r : c.sad) union_time += r.offset - r.onset;
    measured += turn_time - union_time;
    speech += turn_time;
  }
  double fraction = measured / speech;
  CHECK(fraction > 0.10);
  CHECK(fraction < 0.25);
}

TEST_CASE("segment owners are the dominant overlapping speaker") {
  // Two turns with a known overlap: the longer one owns contested segments.
  CorpusSpec spec = DefaultCorpusSpec(4, {1, 1, 0}, 6.0, 41);
  spec.types[0].within_var.setConstant(1e-10);
  spec.types[1].within_var.setConstant(1e-10);
  SpeakerBank bank = GenerateSpeakerBank(spec);
  ConversationSpec conv;
  conv.duration = 40.0;
  conv.participants = {0, 1};
  conv.overlap_fraction = 0.3;
  conv.seed = 43;
  Conversation c = GenerateConversation(bank, conv);
  REQUIRE(c.segments.size() == c.embeddings.size());
  REQUIRE(c.segments.size() == c.segment_types.size());
  // With near-zero within variance each embedding sits on a speaker mean,
  // so the owner is recoverable exactly.
  for (size_t i = 0; i < c.segments.size(); ++i) {
    double d0 = (c.embeddings[i] - bank.speakers[0].mean).norm();
    double d1 = (c.embeddings[i] - bank.speakers[1].mean).norm();
    SpeakerType owner_type =
        d0 < d1 ? bank.speakers[0].type : bank.speakers[1].type;
    CHECK(owner_type == c.segment_types[i]);
  }
}

TEST_CASE("posteriors from labels mix the one-hot row with uniform noise") {
  std::vector<TypedInterval> labels = {
      {"rec", 0.0, 1.0, SpeakerType::kMale},
      {"rec", 1.0, 2.0, SpeakerType::kChild}};
  FramePosteriorSequence seq = MakePosteriors(labels, 3.0, 10.0, 0.3);
  CHECK(seq.rate == 10.0);
  REQUIRE(seq.rows.size() == 30);
  CHECK(seq.rows[0][0] == doctest::Approx(0.7 + 0.1).epsilon(1e-12));
  CHECK(seq.rows[0][1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(seq.rows[15][2] == doctest::Approx(0.8).epsilon(1e-12));
  // Outside any label: uniform.
  CHECK(seq.rows[25][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (const auto &row : seq.rows) {
    CHECK(row[0] + row[1] + row[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
}
