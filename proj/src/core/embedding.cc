// core/embedding.cc

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

#include "core/embedding.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "binary file formats assume a little-endian host");

namespace diarkit {

namespace {

constexpr char kBinaryMagic[4] = {'E', 'M', 'B', 'B'};
constexpr uint32_t kBinaryVersion = 1;

void ThrowIo(const std::string &what, const std::string &path) {
  throw Error(ErrorCode::kIo, what + " '" + path + "'");
}

template <typename T>
void WriteRaw(std::ostream &os, const T &v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T ReadRaw(std::istream &is, const std::string &path) {
  T v;
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) ThrowIo("truncated binary embedding file", path);
  return v;
}

double ParseDouble(const std::string &tok, const std::string &path, int line) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos != tok.size())
    throw Error(ErrorCode::kParse, path + ":" + std::to_string(line) +
                                       ": bad numeric field '" + tok + "'");
  return v;
}

EmbeddingFile ReadEmbeddingFileText(std::istream &is,
                                    const std::string &path) {
  std::string header;
  if (!std::getline(is, header))
    throw Error(ErrorCode::kParse, path + ": empty embedding file");
  int dim = 0;
  if (std::sscanf(header.c_str(), "#emb v1 dim=%d", &dim) != 1 || dim <= 0)
    throw Error(ErrorCode::kParse,
                path + ": expected header '#emb v1 dim=<d>', got '" + header +
                    "'");

  EmbeddingFile file;
  file.dim = dim;
  std::string line;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    EmbeddingRecord rec;
    std::string onset_tok, offset_tok;
    if (!(ls >> rec.recording >> onset_tok >> offset_tok))
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(lineno) + ": short record");
    rec.onset = ParseDouble(onset_tok, path, lineno);
    rec.offset = ParseDouble(offset_tok, path, lineno);
    rec.values.resize(dim);
    for (int j = 0; j < dim; ++j) {
      std::string tok;
      if (!(ls >> tok))
        throw Error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                           ": expected " +
                                           std::to_string(dim) + " values");
      rec.values[j] = ParseDouble(tok, path, lineno);
    }
    std::string extra;
    if (ls >> extra)
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": trailing field '" + extra + "'");
    if (!rec.values.allFinite())
      throw Error(ErrorCode::kNumeric, path + ":" + std::to_string(lineno) +
                                           ": non-finite embedding value");
    file.records.push_back(std::move(rec));
  }
  return file;
}

EmbeddingFile ReadEmbeddingFileBinary(std::istream &is,
                                      const std::string &path) {
  char magic[4];
  is.read(magic, 4);
  uint32_t version = ReadRaw<uint32_t>(is, path);
  if (version != kBinaryVersion)
    throw Error(ErrorCode::kParse,
                path + ": unsupported embedding file version " +
                    std::to_string(version));
  uint32_t dim = ReadRaw<uint32_t>(is, path);
  if (dim == 0 || dim > (1u << 20))
    throw Error(ErrorCode::kParse, path + ": implausible dimension " +
                                       std::to_string(dim));
  EmbeddingFile file;
  file.dim = static_cast<int>(dim);
  while (is.peek() != EOF) {
    uint32_t len = ReadRaw<uint32_t>(is, path);
    EmbeddingRecord rec;
    rec.recording.resize(len);
    is.read(rec.recording.data(), len);
    rec.onset = ReadRaw<double>(is, path);
    rec.offset = ReadRaw<double>(is, path);
    rec.values.resize(dim);
    is.read(reinterpret_cast<char *>(rec.values.data()),
            static_cast<std::streamsize>(dim * sizeof(double)));
    if (!is) ThrowIo("truncated binary embedding file", path);
    if (!rec.values.allFinite())
      throw Error(ErrorCode::kNumeric, path + ": non-finite embedding value");
    file.records.push_back(std::move(rec));
  }
  return file;
}

}  // namespace

Embedding LengthNormalize(const Embedding &e) {
  double norm = e.norm();
  if (norm == 0.0 || !std::isfinite(norm))
    throw Error(ErrorCode::kNumeric, "degenerate embedding");
  return e * (std::sqrt(static_cast<double>(e.size())) / norm);
}

EmbeddingFile ReadEmbeddingFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw Error(ErrorCode::kNotFound, "cannot open embedding file '" + path +
                                          "'");
  }
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  is.seekg(0);
  if (std::memcmp(magic, kBinaryMagic, 4) == 0)
    return ReadEmbeddingFileBinary(is, path);
  return ReadEmbeddingFileText(is, path);
}

void WriteEmbeddingFileText(const EmbeddingFile &file,
                            const std::string &path) {
  std::ofstream os(path);
  if (!os) ThrowIo("cannot write embedding file", path);
  os << "#emb v1 dim=" << file.dim << "\n";
  char buf[64];
  for (const auto &rec : file.records) {
    std::snprintf(buf, sizeof(buf), "%.6f %.6f", rec.onset, rec.offset);
    os << rec.recording << ' ' << buf;
    for (int j = 0; j < file.dim; ++j) {
      std::snprintf(buf, sizeof(buf), " %.17g", rec.values[j]);
      os << buf;
    }
    os << '\n';
  }
  if (!os) ThrowIo("write failed for embedding file", path);
}

void WriteEmbeddingFileBinary(const EmbeddingFile &file,
                              const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) ThrowIo("cannot write embedding file", path);
  os.write(kBinaryMagic, 4);
  WriteRaw(os, kBinaryVersion);
  WriteRaw(os, static_cast<uint32_t>(file.dim));
  for (const auto &rec : file.records) {
    WriteRaw(os, static_cast<uint32_t>(rec.recording.size()));
    os.write(rec.recording.data(),
             static_cast<std::streamsize>(rec.recording.size()));
    WriteRaw(os, rec.onset);
    WriteRaw(os, rec.offset);
    os.write(reinterpret_cast<const char *>(rec.values.data()),
             static_cast<std::streamsize>(file.dim * sizeof(double)));
  }
  if (!os) ThrowIo("write failed for embedding file", path);
}

SpeakerLabels ReadSpeakerLabels(const std::string &path) {
  std::ifstream is(path);
  if (!is) {
    throw Error(ErrorCode::kNotFound, "cannot open label file '" + path +
                                          "'");
  }
  SpeakerLabels labels;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key, speaker, type;
    if (!(ls >> key >> speaker))
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(lineno) + ": short label line");
    labels.key_to_speaker[key] = speaker;
    if (ls >> type) {
      SpeakerType t = ParseSpeakerType(type);
      auto it = labels.speaker_types.find(speaker);
      if (it != labels.speaker_types.end() && it->second != t)
        throw Error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                           ": conflicting type for speaker '" +
                                           speaker + "'");
      labels.speaker_types[speaker] = t;
    }
  }
  return labels;
}

void WriteSpeakerLabels(const SpeakerLabels &labels, const std::string &path) {
  std::ofstream os(path);
  if (!os) ThrowIo("cannot write label file", path);
  for (const auto &[key, speaker] : labels.key_to_speaker) {
    os << key << ' ' << speaker;
    auto it = labels.speaker_types.find(speaker);
    if (it != labels.speaker_types.end())
      os << ' ' << SpeakerTypeChar(it->second);
    os << '\n';
  }
  if (!os) ThrowIo("write failed for label file", path);
}

LabeledEmbeddingSet BuildLabeledSet(const EmbeddingFile &file,
                                    const SpeakerLabels &labels) {
  LabeledEmbeddingSet set;
  set.embeddings.reserve(file.records.size());
  set.speaker_ids.reserve(file.records.size());
  for (const auto &rec : file.records) {
    auto it = labels.key_to_speaker.find(rec.recording);
    if (it == labels.key_to_speaker.end())
      throw Error(ErrorCode::kNotFound,
                  "no speaker label for record '" + rec.recording + "'");
    set.embeddings.push_back(rec.values);
    set.speaker_ids.push_back(it->second);
  }
  set.speaker_types = labels.speaker_types;
  return set;
}

}  // namespace diarkit
