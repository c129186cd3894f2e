// core/segmentation.cc

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

#include "core/segmentation.h"

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

// Shared `<recording> <onset> <offset> [rest]` reader; calls `tail` with the
// remainder stream for per-format suffix fields.
template <typename Row, typename TailFn>
std::vector<Row> ReadIntervalFile(const std::string &path, TailFn tail) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Row row;
    if (!(ss >> row.recording >> row.onset >> row.offset)) {
      throw ParseError(path, line_no, "expected '<rec> <onset> <offset>'");
    }
    if (!std::isfinite(row.onset) || !std::isfinite(row.offset) ||
        row.onset < 0.0 || row.offset <= row.onset) {
      throw ParseError(path, line_no, "bad interval bounds");
    }
    tail(ss, row, path, line_no);
    std::string extra;
    if (ss >> extra) {
      throw ParseError(path, line_no, "trailing field '" + extra + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<std::pair<double, double>> UniformSegment(double onset,
                                                      double offset,
                                                      double window,
                                                      double hop) {
  if (!(window > 0.0) || !(hop > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "window and hop must be > 0");
  }
  if (hop > window) {
    throw Error(ErrorCode::kInvalidArgument,
                "hop must not exceed window (gap-free tiling)");
  }
  if (!(offset > onset)) {
    throw Error(ErrorCode::kInvalidArgument, "empty region");
  }
  std::vector<std::pair<double, double>> segments;
  for (int k = 0;; ++k) {
    double start = onset + k * hop;
    double end = start + window;
    if (end >= offset) {
      segments.emplace_back(start, offset);
      break;
    }
    segments.emplace_back(start, end);
  }
  if (segments.size() >= 2 &&
      segments.back().second - segments.back().first < kMinSegmentSeconds) {
    double end = segments.back().second;
    segments.pop_back();
    segments.back().second = end;
  }
  return segments;
}

std::vector<Interval> ReadSadFile(const std::string &path) {
  return ReadIntervalFile<Interval>(
      path, [](std::istringstream &, Interval &, const std::string &, int) {});
}

void WriteSadFile(const std::vector<Interval> &regions,
                  const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  char buf[64];
  for (const auto &r : regions) {
    std::snprintf(buf, sizeof(buf), " %.6f %.6f", r.onset, r.offset);
    out << r.recording << buf << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

std::vector<TypedInterval> ReadTypeLabels(const std::string &path) {
  return ReadIntervalFile<TypedInterval>(
      path, [](std::istringstream &ss, TypedInterval &row,
               const std::string &file, int line_no) {
        std::string type;
        if (!(ss >> type) || type.size() != 1) {
          throw ParseError(file, line_no, "expected type field <M|F|C>");
        }
        row.type = ParseSpeakerType(type);
      });
}

void WriteTypeLabels(const std::vector<TypedInterval> &labels,
                     const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  char buf[64];
  for (const auto &r : labels) {
    std::snprintf(buf, sizeof(buf), " %.6f %.6f ", r.onset, r.offset);
    out << r.recording << buf << SpeakerTypeChar(r.type) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

SpeakerType LookupTypeAt(const std::vector<TypedInterval> &labels,
                         const std::string &recording, double time) {
  for (const auto &r : labels) {
    if (r.recording == recording && time >= r.onset && time < r.offset) {
      return r.type;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", time);
  throw Error(ErrorCode::kNotFound, "no type label covers " + recording +
                                        " at " + buf);
}

}  // namespace diarkit
