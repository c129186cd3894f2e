// tests/test_posteriors.cc: frame posterior files and segment priors.

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

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "core/error.h"
#include "core/posteriors.h"
#include "core/rng.h"
#include "support/test_util.h"

using namespace diarkit;
using testutil::TempDir;

namespace {

FramePosteriorSequence RandomSequence(CounterRng &rng, int frames,
                                      double rate) {
  FramePosteriorSequence seq;
  seq.rate = rate;
  for (int t = 0; t < frames; ++t) {
    std::array<double, 3> row{};
    double sum = 0.0;
    for (double &v : row) {
      v = 0.01 + rng.Uniform();
      sum += v;
    }
    for (double &v : row) v /= sum;
    seq.rows.push_back(row);
  }
  return seq;
}

// Direct summation over the frame-center rule, independent of the library's
// accumulation.
SpeakerTypePrior OracleSegmentPrior(const FramePosteriorSequence &seq,
                                    double onset, double offset) {
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  int n = 0;
  for (size_t t = 0; t < seq.rows.size(); ++t) {
    double center = (static_cast<double>(t) + 0.5) / seq.rate;
    if (center < onset || center >= offset) continue;
    for (int g = 0; g < 3; ++g) acc[g] += seq.rows[t][g];
    ++n;
  }
  double sum = acc[0] + acc[1] + acc[2];
  SpeakerTypePrior prior;
  for (int g = 0; g < 3; ++g) prior.p[g] = acc[g] / sum;
  (void)n;
  return prior;
}

}  // namespace

TEST_CASE("segment prior matches the summation oracle on random cases") {
  CounterRng rng(201, 0);
  for (int trial = 0; trial < 100; ++trial) {
    double rate = 25.0 + 75.0 * rng.Uniform();
    FramePosteriorSequence seq = RandomSequence(rng, 400, rate);
    double span = 400.0 / rate;
    double onset = rng.Uniform() * span * 0.5;
    double offset = onset + 0.2 + rng.Uniform() * (span - onset - 0.25);
    SpeakerTypePrior got = SegmentPrior(seq, onset, offset);
    SpeakerTypePrior want = OracleSegmentPrior(seq, onset, offset);
    for (int g = 0; g < 3; ++g) {
      CHECK(std::fabs(got.p[g] - want.p[g]) <= 1e-12);
    }
    CHECK(got.p[0] + got.p[1] + got.p[2] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("segment prior of a uniform sequence is uniform") {
  FramePosteriorSequence seq;
  seq.rate = 100.0;
  for (int t = 0; t < 100; ++t) {
    seq.rows.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  }
  SpeakerTypePrior p = SegmentPrior(seq, 0.1, 0.9);
  for (int g = 0; g < 3; ++g) {
    CHECK(p.p[g] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("segment outside the posterior extent is an error") {
  FramePosteriorSequence seq;
  seq.rate = 100.0;
  for (int t = 0; t < 10; ++t) seq.rows.push_back({0.5, 0.25, 0.25});
  // Frames cover [0, 0.1); a segment beyond that holds no frame center.
  CHECK_THROWS_WITH_AS(SegmentPrior(seq, 0.2, 0.4),
                       doctest::Contains("segment outside posterior extent"),
                       Error);
  CHECK_NOTHROW(SegmentPrior(seq, 0.0, 0.1));
}

TEST_CASE("boundary frames follow the half-open center rule") {
  FramePosteriorSequence seq;
  seq.rate = 10.0;  // centers at 0.05, 0.15, 0.25, ...
  seq.rows = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  // [0.05, 0.15) contains only the first center.
  SpeakerTypePrior p = SegmentPrior(seq, 0.05, 0.15);
  CHECK(p.p[0] == 1.0);
  // [0.0, 0.16) contains the first two centers.
  p = SegmentPrior(seq, 0.0, 0.16);
  CHECK(p.p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.p[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("posterior file round-trips") {
  TempDir tmp("post_io");
  CounterRng rng(202, 0);
  std::map<std::string, FramePosteriorSequence> sections;
  sections["recA"] = RandomSequence(rng, 50, 100.0);
  sections["recB"] = RandomSequence(rng, 20, 40.0);
  std::string path = tmp.Path("multi.post");
  WritePosteriorFile(sections, path);
  auto back = ReadPosteriorFile(path);
  REQUIRE(back.size() == 2);
  for (const auto &[rec, seq] : sections) {
    REQUIRE(back.count(rec) == 1);
    const auto &b = back.at(rec);
    CHECK(b.rate == seq.rate);
    REQUIRE(b.rows.size() == seq.rows.size());
    for (size_t t = 0; t < seq.rows.size(); ++t) {
      for (int g = 0; g < 3; ++g) CHECK(b.rows[t][g] == seq.rows[t][g]);
    }
  }
}

TEST_CASE("anonymous section resolves for any recording") {
  TempDir tmp("post_anon");
  std::string path = tmp.Path("anon.post");
  testutil::Spit(path,
                 "#post v1 rate=100\n"
                 "0 0.5 0.25 0.25\n"
                 "1 0.5 0.25 0.25\n");
  auto sections = ReadPosteriorFile(path);
  REQUIRE(sections.size() == 1);
  const FramePosteriorSequence &seq = FindPosteriors(sections, "whatever");
  CHECK(seq.rate == 100.0);
  CHECK(seq.rows.size() == 2);
}

TEST_CASE("named sections require an exact recording match") {
  TempDir tmp("post_named");
  std::string path = tmp.Path("named.post");
  testutil::Spit(path,
                 "#post v1 rate=50 rec=recA\n"
                 "0 1 0 0\n");
  auto sections = ReadPosteriorFile(path);
  CHECK_NOTHROW(FindPosteriors(sections, "recA"));
  CHECK_THROWS_AS(FindPosteriors(sections, "recB"), Error);
}

TEST_CASE("malformed posterior files are rejected with line context") {
  TempDir tmp("post_bad");
  std::string path = tmp.Path("bad.post");

  testutil::Spit(path, "0 0.5 0.25 0.25\n");  // missing header
  CHECK_THROWS_AS(ReadPosteriorFile(path), Error);

  testutil::Spit(path,
                 "#post v1 rate=100\n"
                 "0 0.5 0.25 0.25\n"
                 "2 0.5 0.25 0.25\n");  // index gap
  CHECK_THROWS_WITH_AS(ReadPosteriorFile(path),
                       doctest::Contains("out of sequence"), Error);

  testutil::Spit(path,
                 "#post v1 rate=100\n"
                 "0 0 0 0\n");  // no mass
  CHECK_THROWS_AS(ReadPosteriorFile(path), Error);

  testutil::Spit(path,
                 "#post v1 rate=100\n"
                 "0 0.5 0.25\n");  // short row
  CHECK_THROWS_AS(ReadPosteriorFile(path), Error);

  testutil::Spit(path,
                 "#post v1 rate=100\n"
                 "0 1 0 0\n"
                 "#post v1 rate=100 rec=recA\n"
                 "0 1 0 0\n");  // anonymous plus named
  CHECK_THROWS_AS(ReadPosteriorFile(path), Error);

  CHECK_THROWS_AS(ReadPosteriorFile(tmp.Path("absent.post")), Error);
}
