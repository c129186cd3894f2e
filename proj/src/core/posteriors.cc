// core/posteriors.cc

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

#include "core/posteriors.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.h"

namespace diarkit {

namespace {

Error ParseError(const std::string &path, int line, const std::string &what) {
  return Error(ErrorCode::kParse,
               path + ":" + std::to_string(line) + ": " + what);
}

// Header: "#post v1 rate=<fps>" with an optional " rec=<id>" suffix.
void ParseHeader(const std::string &line, const std::string &path,
                 int line_no, double *rate, std::string *rec) {
  std::istringstream ss(line);
  std::string tag, ver, field;
  ss >> tag >> ver;
  if (tag != "#post" || ver != "v1") {
    throw ParseError(path, line_no, "expected '#post v1' header");
  }
  *rate = 0.0;
  rec->clear();
  bool have_rate = false;
  while (ss >> field) {
    if (field.rfind("rate=", 0) == 0) {
      try {
        size_t pos = 0;
        *rate = std::stod(field.substr(5), &pos);
        if (pos != field.size() - 5) throw std::invalid_argument(field);
      } catch (const std::exception &) {
        throw ParseError(path, line_no, "bad rate in '" + field + "'");
      }
      have_rate = true;
    } else if (field.rfind("rec=", 0) == 0) {
      *rec = field.substr(4);
    } else {
      throw ParseError(path, line_no, "unknown header field '" + field + "'");
    }
  }
  if (!have_rate || !(*rate > 0.0)) {
    throw ParseError(path, line_no, "header needs rate=<fps> > 0");
  }
}

}  // namespace

std::map<std::string, FramePosteriorSequence> ReadPosteriorFile(
    const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  std::map<std::string, FramePosteriorSequence> sections;
  std::string line;
  int line_no = 0;
  std::string current;
  bool in_section = false;
  bool anonymous = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      double rate = 0.0;
      std::string rec;
      ParseHeader(line, path, line_no, &rate, &rec);
      if (sections.count(rec)) {
        throw ParseError(path, line_no,
                         rec.empty() ? "second anonymous section"
                                     : "duplicate section rec=" + rec);
      }
      if (rec.empty()) anonymous = true;
      sections[rec].rate = rate;
      current = rec;
      in_section = true;
      continue;
    }
    if (!in_section) {
      throw ParseError(path, line_no, "data before '#post v1' header");
    }
    std::istringstream ss(line);
    long long t_index = -1;
    if (!(ss >> t_index) ||
        t_index != static_cast<long long>(sections[current].rows.size())) {
      throw ParseError(path, line_no, "frame index out of sequence");
    }
    std::array<double, kNumSpeakerTypes> row;
    for (int g = 0; g < kNumSpeakerTypes; ++g) {
      if (!(ss >> row[g]) || !std::isfinite(row[g]) || row[g] < 0.0) {
        throw ParseError(path, line_no, "expected 3 nonnegative posteriors");
      }
    }
    std::string extra;
    if (ss >> extra) {
      throw ParseError(path, line_no, "trailing field '" + extra + "'");
    }
    if (row[0] + row[1] + row[2] <= 0.0) {
      throw ParseError(path, line_no, "posterior row has no mass");
    }
    sections[current].rows.push_back(row);
  }
  if (sections.empty()) {
    throw Error(ErrorCode::kParse, path + ": no posterior sections");
  }
  if (anonymous && sections.size() > 1) {
    throw Error(ErrorCode::kParse,
                path + ": anonymous section mixed with named sections");
  }
  for (const auto &[rec, seq] : sections) {
    if (seq.rows.empty()) {
      throw Error(ErrorCode::kParse,
                  path + ": empty section" + (rec.empty() ? "" : " " + rec));
    }
  }
  return sections;
}

void WritePosteriorFile(const std::map<std::string, FramePosteriorSequence>
                            &sections,
                        const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  char buf[96];
  for (const auto &[rec, seq] : sections) {
    out << "#post v1 rate=";
    std::snprintf(buf, sizeof(buf), "%.17g", seq.rate);
    out << buf;
    if (!rec.empty()) out << " rec=" << rec;
    out << '\n';
    for (size_t t = 0; t < seq.rows.size(); ++t) {
      const auto &row = seq.rows[t];
      std::snprintf(buf, sizeof(buf), "%zu %.17g %.17g %.17g", t, row[0],
                    row[1], row[2]);
      out << buf << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

const FramePosteriorSequence &FindPosteriors(
    const std::map<std::string, FramePosteriorSequence> &sections,
    const std::string &recording) {
  auto it = sections.find(recording);
  if (it != sections.end()) return it->second;
  it = sections.find("");
  if (it != sections.end()) return it->second;
  throw Error(ErrorCode::kNotFound,
              "no posteriors for recording '" + recording + "'");
}

SpeakerTypePrior SegmentPrior(const FramePosteriorSequence &seq, double onset,
                              double offset) {
  if (!(seq.rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "posterior rate must be > 0");
  }
  std::array<double, kNumSpeakerTypes> sum{0.0, 0.0, 0.0};
  int count = 0;
  for (size_t t = 0; t < seq.rows.size(); ++t) {
    double center = (static_cast<double>(t) + 0.5) / seq.rate;
    if (center < onset || center >= offset) continue;
    for (int g = 0; g < kNumSpeakerTypes; ++g) sum[g] += seq.rows[t][g];
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment outside posterior extent");
  }
  double total = sum[0] + sum[1] + sum[2];
  SpeakerTypePrior prior;
  for (int g = 0; g < kNumSpeakerTypes; ++g) prior.p[g] = sum[g] / total;
  return prior;
}

}  // namespace diarkit
