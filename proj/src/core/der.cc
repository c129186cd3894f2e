// core/der.cc

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

#include "core/der.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <utility>

#include "core/assignment.h"
#include "core/error.h"
#include "core/types.h"

namespace diarkit {

namespace {

using Micros = std::int64_t;

Micros ToMicros(double seconds) {
  return static_cast<Micros>(std::llround(seconds * 1e6));
}

struct IndexedTurn {
  Micros onset = 0;
  Micros offset = 0;
  int speaker = -1;
};

struct RecordingPair {
  std::vector<IndexedTurn> ref, hyp;
  int num_ref = 0, num_hyp = 0;
};

// Merged, disjoint, sorted no-score intervals.
std::vector<std::pair<Micros, Micros>> CollarExclusions(
    const std::vector<IndexedTurn> &ref, Micros collar) {
  std::vector<std::pair<Micros, Micros>> raw;
  if (collar > 0) {
    for (const auto &t : ref) {
      raw.emplace_back(t.onset - collar, t.onset + collar);
      raw.emplace_back(t.offset - collar, t.offset + collar);
    }
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<Micros, Micros>> merged;
  for (const auto &iv : raw) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

bool InsideExclusion(const std::vector<std::pair<Micros, Micros>> &excl,
                     Micros a, Micros b) {
  // Event times include the exclusion bounds, so [a, b) is never split.
  auto it = std::upper_bound(excl.begin(), excl.end(),
                             std::make_pair(a, std::numeric_limits<Micros>::max()));
  if (it == excl.begin()) return false;
  --it;
  return it->first <= a && b <= it->second;
}

// Walks homogeneous intervals of one recording and invokes
// fn(len, ref_active, hyp_active) for every scored interval.
template <typename Fn>
void WalkScoredIntervals(const RecordingPair &rec,
                         const std::vector<std::pair<Micros, Micros>> &excl,
                         bool score_overlap, Fn fn) {
  std::vector<Micros> times;
  for (const auto &t : rec.ref) {
    times.push_back(t.onset);
    times.push_back(t.offset);
  }
  for (const auto &t : rec.hyp) {
    times.push_back(t.onset);
    times.push_back(t.offset);
  }
  for (const auto &iv : excl) {
    times.push_back(iv.first);
    times.push_back(iv.second);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<char> ref_active(rec.num_ref), hyp_active(rec.num_hyp);
  for (size_t i = 0; i + 1 < times.size(); ++i) {
    Micros a = times[i], b = times[i + 1];
    if (b <= a) continue;
    if (InsideExclusion(excl, a, b)) continue;
    std::fill(ref_active.begin(), ref_active.end(), 0);
    std::fill(hyp_active.begin(), hyp_active.end(), 0);
    int num_ref_active = 0;
    for (const auto &t : rec.ref) {
      if (t.onset <= a && t.offset >= b && !ref_active[t.speaker]) {
        ref_active[t.speaker] = 1;
        ++num_ref_active;
      }
    }
    if (!score_overlap && num_ref_active >= 2) continue;
    for (const auto &t : rec.hyp) {
      if (t.onset <= a && t.offset >= b) hyp_active[t.speaker] = 1;
    }
    fn(b - a, ref_active, hyp_active);
  }
}

}  // namespace

DerReport ComputeDer(const std::vector<Turn> &reference,
                     const std::vector<Turn> &hypothesis,
                     const DerOptions &options) {
  if (reference.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty scoring region");
  }
  if (options.collar < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "collar must be >= 0");
  }
  std::map<std::string, RecordingPair> recordings;
  std::map<std::string, std::map<std::string, int>> ref_ids, hyp_ids;
  auto index = [](std::map<std::string, int> &ids, const std::string &name) {
    auto [it, inserted] = ids.emplace(name, static_cast<int>(ids.size()));
    (void)inserted;
    return it->second;
  };
  for (const auto &t : reference) {
    if (!(t.offset > t.onset)) {
      throw Error(ErrorCode::kInvalidArgument, "turn duration must be > 0");
    }
    recordings[t.recording].ref.push_back(
        {ToMicros(t.onset), ToMicros(t.offset),
         index(ref_ids[t.recording], t.speaker)});
  }
  for (const auto &t : hypothesis) {
    if (!(t.offset > t.onset)) {
      throw Error(ErrorCode::kInvalidArgument, "turn duration must be > 0");
    }
    recordings[t.recording].hyp.push_back(
        {ToMicros(t.onset), ToMicros(t.offset),
         index(hyp_ids[t.recording], t.speaker)});
  }
  const Micros collar = ToMicros(options.collar);
  std::int64_t miss = 0, fa = 0, sm = 0, total = 0;
  for (auto &[name, rec] : recordings) {
    rec.num_ref = static_cast<int>(ref_ids[name].size());
    rec.num_hyp = static_cast<int>(hyp_ids[name].size());
    auto excl = CollarExclusions(rec.ref, collar);
    // Pass 1: co-occurrence time of each (reference, hypothesis) speaker
    // pair over the scored regions.
    Eigen::MatrixXd cooc = Eigen::MatrixXd::Zero(rec.num_ref, rec.num_hyp);
    WalkScoredIntervals(
        rec, excl, options.score_overlap,
        [&](Micros len, const std::vector<char> &ra,
            const std::vector<char> &ha) {
          for (int r = 0; r < rec.num_ref; ++r) {
            if (!ra[r]) continue;
            for (int h = 0; h < rec.num_hyp; ++h) {
              if (ha[h]) cooc(r, h) += static_cast<double>(len);
            }
          }
        });
    std::vector<int> ref_to_hyp = MaxWeightAssignment(cooc);
    // Pass 2: error decomposition under the fixed mapping.
    WalkScoredIntervals(
        rec, excl, options.score_overlap,
        [&](Micros len, const std::vector<char> &ra,
            const std::vector<char> &ha) {
          int r_count = 0, h_count = 0, matched = 0;
          for (int r = 0; r < rec.num_ref; ++r) {
            if (!ra[r]) continue;
            ++r_count;
            int h = ref_to_hyp[r];
            if (h >= 0 && ha[h]) ++matched;
          }
          for (int h = 0; h < rec.num_hyp; ++h) h_count += ha[h] ? 1 : 0;
          total += static_cast<std::int64_t>(r_count) * len;
          miss += static_cast<std::int64_t>(std::max(r_count - h_count, 0)) *
                  len;
          fa += static_cast<std::int64_t>(std::max(h_count - r_count, 0)) *
                len;
          sm += static_cast<std::int64_t>(std::min(r_count, h_count) -
                                          matched) *
                len;
        });
  }
  if (total <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty scoring region");
  }
  DerReport report;
  report.miss = static_cast<double>(miss) / 1e6;
  report.false_alarm = static_cast<double>(fa) / 1e6;
  report.speaker_mismatch = static_cast<double>(sm) / 1e6;
  report.total_scored = static_cast<double>(total) / 1e6;
  return report;
}

std::string FormatDerText(const DerReport &report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "fa %.6f\nmiss %.6f\nsm %.6f\ntotal %.6f\nder %.6f\n",
                report.false_alarm, report.miss, report.speaker_mismatch,
                report.total_scored, report.der());
  return buf;
}

std::string FormatDerJson(const DerReport &report) {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "{\"fa\": %.17g, \"miss\": %.17g, \"sm\": %.17g, "
                "\"total\": %.17g, \"der\": %.17g}\n",
                report.false_alarm, report.miss, report.speaker_mismatch,
                report.total_scored, report.der());
  return buf;
}

}  // namespace diarkit
