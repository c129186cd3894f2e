// core/rttm.h

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

#ifndef DIARKIT_CORE_RTTM_H_
#define DIARKIT_CORE_RTTM_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace diarkit {

struct Turn {
  std::string recording;
  double onset = 0.0;
  double offset = 0.0;
  std::string speaker;
};

// Reads SPEAKER records; other record types are skipped.  Malformed SPEAKER
// lines report path and line number.
std::vector<Turn> ReadRttm(const std::string &path);
std::vector<Turn> ParseRttm(std::istream &in, const std::string &origin);

// Emits `SPEAKER <rec> 1 <onset> <dur> <NA> <NA> <speaker> <NA> <NA>` with
// times at 3 decimals, sorted by (recording, onset, speaker).  Sorting plus
// fixed formatting makes equal diarizations byte-identical.
void WriteRttm(std::vector<Turn> turns, const std::string &path);
std::string FormatRttm(std::vector<Turn> turns);

}  // namespace diarkit

#endif  // DIARKIT_CORE_RTTM_H_
