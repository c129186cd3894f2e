// core/embedding.h

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

#ifndef DIARKIT_CORE_EMBEDDING_H_
#define DIARKIT_CORE_EMBEDDING_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "core/types.h"

namespace diarkit {

// One subsegment-level embedding record as stored in embedding files.
struct EmbeddingRecord {
  std::string recording;
  double onset = 0.0;   // seconds
  double offset = 0.0;  // seconds
  Embedding values;
};

struct EmbeddingFile {
  int dim = 0;
  std::vector<EmbeddingRecord> records;
};

// Scales the vector so its Euclidean norm equals sqrt(dim); direction is
// preserved.  Throws on the zero vector.
Embedding LengthNormalize(const Embedding &e);

// Text format: header "#emb v1 dim=<d>", then one record per line:
//   <recording-id> <onset> <offset> <d floats>
// Binary format: magic "EMBB", u32 version, u32 dim, then per record a u32
// recording-id byte length, the id bytes, f64 onset, f64 offset and d f64
// values.  Everything little-endian.  ReadEmbeddingFile sniffs the magic.
EmbeddingFile ReadEmbeddingFile(const std::string &path);
void WriteEmbeddingFileText(const EmbeddingFile &file, const std::string &path);
void WriteEmbeddingFileBinary(const EmbeddingFile &file,
                              const std::string &path);

// Label file: one line per record key, "<key> <speaker-id> [<M|F|C>]".
// The key is the recording-id field of the matching embedding record.
struct SpeakerLabels {
  std::map<std::string, std::string> key_to_speaker;
  std::map<std::string, SpeakerType> speaker_types;
};

SpeakerLabels ReadSpeakerLabels(const std::string &path);
void WriteSpeakerLabels(const SpeakerLabels &labels, const std::string &path);

// Joins embedding records with speaker labels by recording-id key.
// Every record must have a label.
LabeledEmbeddingSet BuildLabeledSet(const EmbeddingFile &file,
                                    const SpeakerLabels &labels);

}  // namespace diarkit

#endif  // DIARKIT_CORE_EMBEDDING_H_
