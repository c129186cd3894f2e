// core/der.h

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

#ifndef DIARKIT_CORE_DER_H_
#define DIARKIT_CORE_DER_H_

#include <string>
#include <vector>

#include "core/rttm.h"

namespace diarkit {

struct DerOptions {
  double collar = 0.0;        // no-score zone around reference boundaries
  bool score_overlap = true;  // false: exclude reference-overlap regions
};

// All fields in seconds of reference speaker time.
struct DerReport {
  double false_alarm = 0.0;
  double miss = 0.0;
  double speaker_mismatch = 0.0;
  double total_scored = 0.0;

  double der() const {
    return (false_alarm + miss + speaker_mismatch) / total_scored;
  }
};

// Interval-algebra DER over boundary events, exact in integer microseconds.
// Speaker mapping is a per-recording optimal one-to-one assignment on
// co-occurrence time within the scored regions; recordings aggregate by
// component sums.  Throws "empty scoring region" when no reference time
// survives exclusion.
DerReport ComputeDer(const std::vector<Turn> &reference,
                     const std::vector<Turn> &hypothesis,
                     const DerOptions &options = {});

// Flat key-value block: fa, miss, sm, total, der (one per line).
std::string FormatDerText(const DerReport &report);
// JSON object with the same keys.
std::string FormatDerJson(const DerReport &report);

}  // namespace diarkit

#endif  // DIARKIT_CORE_DER_H_
