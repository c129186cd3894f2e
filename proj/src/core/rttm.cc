// core/rttm.cc

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

#include "core/rttm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "core/error.h"

namespace diarkit {

std::vector<Turn> ParseRttm(std::istream &in, const std::string &origin) {
  std::vector<Turn> turns;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == ';') continue;
    std::istringstream ss(line);
    std::string type;
    if (!(ss >> type)) continue;
    if (type != "SPEAKER") continue;
    std::string rec, channel, na1, na2, speaker;
    double onset = 0.0, dur = 0.0;
    if (!(ss >> rec >> channel >> onset >> dur >> na1 >> na2 >> speaker)) {
      throw Error(ErrorCode::kParse, origin + ":" + std::to_string(line_no) +
                                         ": malformed SPEAKER line");
    }
    if (!std::isfinite(onset) || !std::isfinite(dur) || onset < 0.0 ||
        dur <= 0.0) {
      throw Error(ErrorCode::kParse, origin + ":" + std::to_string(line_no) +
                                         ": bad onset/duration");
    }
    turns.push_back({rec, onset, onset + dur, speaker});
  }
  return turns;
}

std::vector<Turn> ReadRttm(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  return ParseRttm(in, path);
}

std::string FormatRttm(std::vector<Turn> turns) {
  std::sort(turns.begin(), turns.end(), [](const Turn &a, const Turn &b) {
    return std::tie(a.recording, a.onset, a.speaker) <
           std::tie(b.recording, b.onset, b.speaker);
  });
  std::string out;
  char buf[64];
  for (const auto &t : turns) {
    out += "SPEAKER ";
    out += t.recording;
    std::snprintf(buf, sizeof(buf), " 1 %.3f %.3f <NA> <NA> ", t.onset,
                  t.offset - t.onset);
    out += buf;
    out += t.speaker;
    out += " <NA> <NA>\n";
  }
  return out;
}

void WriteRttm(std::vector<Turn> turns, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << FormatRttm(std::move(turns));
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

}  // namespace diarkit
